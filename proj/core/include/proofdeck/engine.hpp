#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "proofdeck/pkg.hpp"
#include "proofdeck/protocol.hpp"
#include "proofdeck/stm.hpp"

namespace proofdeck {

inline constexpr std::string_view kEngineName = "proofdeck";
inline constexpr std::string_view kEngineVersion = "0.1.0";

/// Owns one document (STM) and the package manager, and turns commands
/// into answers. Feedback and library progress are delivered through the
/// same sink, interleaved in emission order.
class Engine {
 public:
  using AnswerSink = std::function<void(const Answer&)>;

  explicit Engine(std::vector<std::filesystem::path> roots = {});

  void handle(const Command& command, const AnswerSink& sink);
  /// Decodes one message, dispatches it, and returns the encoded answers.
  /// Malformed input yields a single JsonExn.
  std::vector<std::string> handle_json(std::string_view message);

  const Stm& stm() const noexcept { return stm_; }
  const pkg::Manager& packages() const noexcept { return packages_; }

 private:
  void dispatch(const Command& command);

  pkg::Manager packages_;
  Stm stm_;
  const AnswerSink* sink_ = nullptr;
};

}  // namespace proofdeck

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "proofdeck/kernel.hpp"
#include "proofdeck/options.hpp"
#include "proofdeck/vernac.hpp"

namespace proofdeck {

namespace pkg {
class Manager;
}

struct StateId {
  std::int64_t value = 0;

  friend auto operator<=>(const StateId&, const StateId&) = default;
};

inline constexpr StateId kInitialState{1};

/// Byte range inside the offending sentence.
struct Loc {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Loc&, const Loc&) = default;
};

enum class Level { Info, Warning, Error };

namespace feedback {
struct ProcessingStarted {
  friend bool operator==(const ProcessingStarted&, const ProcessingStarted&) = default;
};
struct Processed {
  friend bool operator==(const Processed&, const Processed&) = default;
};
struct Message {
  Level level = Level::Info;
  std::string text;
  friend bool operator==(const Message&, const Message&) = default;
};
}  // namespace feedback

using FeedbackContents =
    std::variant<feedback::ProcessingStarted, feedback::Processed, feedback::Message>;

struct Feedback {
  StateId id;
  FeedbackContents contents;
  friend bool operator==(const Feedback&, const Feedback&) = default;
};

/// Error answer raised by every STM operation. `pair` is (sid, eid) for
/// parse failures and (last good state, failing state) for execution
/// failures; plain protocol errors carry neither location nor pair.
class EngineError : public std::runtime_error {
 public:
  EngineError(std::optional<Loc> loc, std::optional<std::pair<std::int64_t, std::int64_t>> pair,
              const std::string& message)
      : std::runtime_error(message), loc_(loc), pair_(pair) {}
  explicit EngineError(const std::string& message) : EngineError(std::nullopt, std::nullopt, message) {}

  const std::optional<Loc>& loc() const noexcept { return loc_; }
  const std::optional<std::pair<std::int64_t, std::int64_t>>& pair() const noexcept { return pair_; }

 private:
  std::optional<Loc> loc_;
  std::optional<std::pair<std::int64_t, std::int64_t>> pair_;
};

struct Snapshot {
  ProofEnv env;
  std::optional<ProofState> proof;
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

enum class Status { Parsed, Processing, Processed, Errored };

struct DocState {
  StateId id;
  StateId parent;
  std::string text;
  Vernac sentence;
  Status status = Status::Parsed;
  /// Present iff status == Processed.
  std::optional<Snapshot> snapshot;
  /// Present iff status == Errored; replayed by later observes.
  std::optional<EngineError> error;
};

struct GoalView {
  StateId id;
  std::string text;
  std::size_t goal_count = 0;
};

/// State Transaction Machine over a linear chain of sentences.
///
/// `add` only parses; `observe` executes every pending ancestor in order and
/// reports progress through the feedback sink. `cancel` drops a state and
/// everything after it. Not thread-safe: one owner drives it.
class Stm {
 public:
  using FeedbackSink = std::function<void(const Feedback&)>;

  Stm(pkg::Manager& packages, FeedbackSink sink);

  StateId init(const std::vector<LogicalPath>& loadpath, const std::vector<LogicalPath>& init_mods);
  StateId add(StateId sid, std::int64_t eid, std::string_view cmd);
  void observe(StateId sid);
  std::vector<StateId> cancel(StateId sid);
  GoalView goals(StateId sid) const;

  void set_opt(std::optional<bool> global, const OptionPath& path, OptionValue value);
  OptionValue get_opt(const OptionPath& path) const;

  bool initialized() const noexcept { return initialized_; }
  StateId tip() const;
  const DocState* find(StateId sid) const;
  /// Live states from the initial one to the tip.
  const std::vector<DocState>& chain() const noexcept { return chain_; }

 private:
  void require_init() const;
  std::size_t index_of(StateId sid) const;
  ModuleResolver resolver() const;
  void emit(StateId id, FeedbackContents contents);

  pkg::Manager& packages_;
  FeedbackSink sink_;
  bool initialized_ = false;
  std::int64_t next_id_ = 2;
  std::vector<DocState> chain_;
  OptionTable options_;
};

}  // namespace proofdeck

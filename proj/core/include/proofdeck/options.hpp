#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace proofdeck {

using OptionPath = std::vector<std::string>;
using OptionValue = std::variant<bool, std::int64_t, std::string>;

class OptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptionSpec {
  OptionPath path;
  OptionValue default_value;
};

/// The fixed set of options the engine understands.
const std::vector<OptionSpec>& registered_options();

inline const OptionPath kPrintingCompact{"Printing", "Compact"};
inline const OptionPath kSilent{"Silent"};
inline const OptionPath kProofStepLimit{"Proof", "StepLimit"};

/// Option values keyed by path. Always holds every registered option.
class OptionTable {
 public:
  OptionTable();

  const OptionValue& get(const OptionPath& path) const;
  /// Throws OptionError on an unknown path or a value of the wrong kind.
  void set(const OptionPath& path, OptionValue value);

  bool flag(const OptionPath& path) const { return std::get<bool>(get(path)); }
  std::int64_t integer(const OptionPath& path) const {
    return std::get<std::int64_t>(get(path));
  }

  friend bool operator==(const OptionTable&, const OptionTable&) = default;

 private:
  std::map<OptionPath, OptionValue> values_;
};

}  // namespace proofdeck

#include "proofdeck/options.hpp"

#include "proofdeck/common.hpp"

namespace proofdeck {
namespace {

std::string kind_name(const OptionValue& v) {
  switch (v.index()) {
    case 0: return "a bool";
    case 1: return "an int";
    default: return "a string";
  }
}

}  // namespace

const std::vector<OptionSpec>& registered_options() {
  static const std::vector<OptionSpec> specs{
      {kPrintingCompact, false},
      {kSilent, false},
      {kProofStepLimit, std::int64_t{1000}},
  };
  return specs;
}

OptionTable::OptionTable() {
  for (const auto& spec : registered_options()) values_.emplace(spec.path, spec.default_value);
}

const OptionValue& OptionTable::get(const OptionPath& path) const {
  auto it = values_.find(path);
  if (it == values_.end()) throw OptionError("unknown option " + dotted(path));
  return it->second;
}

void OptionTable::set(const OptionPath& path, OptionValue value) {
  auto it = values_.find(path);
  if (it == values_.end()) throw OptionError("unknown option " + dotted(path));
  if (it->second.index() != value.index())
    throw OptionError("option " + dotted(path) + " expects " + kind_name(it->second));
  it->second = std::move(value);
}

}  // namespace proofdeck

#include "proofdeck/protocol.hpp"

#include <array>

namespace proofdeck {

std::string_view constructor_name(const Command& c) noexcept {
  static constexpr std::array<std::string_view, std::variant_size_v<Command>> names{
      "Init", "Add", "Cancel", "Observe", "Goals", "SetOpt", "GetOpt", "InfoPkg", "LoadPkg", "GetInfo"};
  return names[c.index()];
}

std::string_view constructor_name(const Answer& a) noexcept {
  static constexpr std::array<std::string_view, std::variant_size_v<Answer>> names{
      "Added",   "Cancelled", "Observed", "GoalInfo",    "Feedback", "CoqOpt",
      "CoqExn",  "JsonExn",   "LibInfo",  "LibProgress", "LibLoaded"};
  return names[a.index()];
}

}  // namespace proofdeck

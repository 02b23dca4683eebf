#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "proofdeck/common.hpp"
#include "proofdeck/options.hpp"
#include "proofdeck/pkg.hpp"
#include "proofdeck/stm.hpp"

namespace proofdeck {

/// Inbound messages: document commands and library-manager commands.
namespace cmd {

struct Init {
  std::vector<LogicalPath> loadpath;
  std::vector<LogicalPath> init_mods;
  friend bool operator==(const Init&, const Init&) = default;
};
struct Add {
  StateId sid;
  std::int64_t eid = 0;
  std::string text;
  friend bool operator==(const Add&, const Add&) = default;
};
struct Cancel {
  StateId sid;
  friend bool operator==(const Cancel&, const Cancel&) = default;
};
struct Observe {
  StateId sid;
  friend bool operator==(const Observe&, const Observe&) = default;
};
struct Goals {
  StateId sid;
  friend bool operator==(const Goals&, const Goals&) = default;
};
struct SetOpt {
  std::optional<bool> global;
  OptionPath path;
  OptionValue value;
  friend bool operator==(const SetOpt&, const SetOpt&) = default;
};
struct GetOpt {
  OptionPath path;
  friend bool operator==(const GetOpt&, const GetOpt&) = default;
};
struct InfoPkg {
  std::string base;
  std::vector<std::string> names;
  friend bool operator==(const InfoPkg&, const InfoPkg&) = default;
};
struct LoadPkg {
  std::string base;
  std::string name;
  friend bool operator==(const LoadPkg&, const LoadPkg&) = default;
};
struct GetInfo {
  friend bool operator==(const GetInfo&, const GetInfo&) = default;
};

}  // namespace cmd

using Command = std::variant<cmd::Init, cmd::Add, cmd::Cancel, cmd::Observe, cmd::Goals, cmd::SetOpt,
                             cmd::GetOpt, cmd::InfoPkg, cmd::LoadPkg, cmd::GetInfo>;

/// Outbound messages, including feedback and library events.
namespace ans {

struct Added {
  StateId sid;
  friend bool operator==(const Added&, const Added&) = default;
};
struct Cancelled {
  std::vector<StateId> sids;
  friend bool operator==(const Cancelled&, const Cancelled&) = default;
};
struct Observed {
  StateId sid;
  friend bool operator==(const Observed&, const Observed&) = default;
};
struct GoalInfo {
  StateId sid;
  std::string text;
  std::int64_t goal_count = 0;
  friend bool operator==(const GoalInfo&, const GoalInfo&) = default;
};
struct FeedbackMsg {
  Feedback feedback;
  friend bool operator==(const FeedbackMsg&, const FeedbackMsg&) = default;
};
struct CoqOpt {
  OptionValue value;
  friend bool operator==(const CoqOpt&, const CoqOpt&) = default;
};
struct CoqExn {
  std::optional<Loc> loc;
  std::optional<std::pair<std::int64_t, std::int64_t>> pair;
  std::string message;
  friend bool operator==(const CoqExn&, const CoqExn&) = default;
};
struct JsonExn {
  std::string message;
  friend bool operator==(const JsonExn&, const JsonExn&) = default;
};
struct LibInfo {
  std::string name;
  pkg::Bundle bundle;
  friend bool operator==(const LibInfo&, const LibInfo&) = default;
};
struct LibProgress {
  pkg::ProgressInfo info;
  friend bool operator==(const LibProgress&, const LibProgress&) = default;
};
struct LibLoaded {
  std::string name;
  friend bool operator==(const LibLoaded&, const LibLoaded&) = default;
};

}  // namespace ans

using Answer = std::variant<ans::Added, ans::Cancelled, ans::Observed, ans::GoalInfo, ans::FeedbackMsg,
                            ans::CoqOpt, ans::CoqExn, ans::JsonExn, ans::LibInfo, ans::LibProgress,
                            ans::LibLoaded>;

std::string_view constructor_name(const Command& c) noexcept;
std::string_view constructor_name(const Answer& a) noexcept;

}  // namespace proofdeck

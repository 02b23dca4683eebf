#include "proofdeck/codec.hpp"

#include <functional>
#include <map>

#include <nlohmann/json.hpp>

namespace proofdeck {
namespace {

using nlohmann::json;

struct DecodeError {
  std::string message;
};

[[noreturn]] void bad(std::string message) { throw DecodeError{std::move(message)}; }

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

// ---- encoding ------------------------------------------------------------

json path_json(const LogicalPath& p) { return json(p); }

json paths_json(const std::vector<LogicalPath>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(path_json(p));
  return out;
}

json option_json(const OptionValue& v) {
  switch (v.index()) {
    case 0: return json::array({"Bool", std::get<bool>(v)});
    case 1: return json::array({"Int", std::get<std::int64_t>(v)});
    default: return json::array({"String", std::get<std::string>(v)});
  }
}

const char* level_name(Level l) {
  switch (l) {
    case Level::Info: return "Info";
    case Level::Warning: return "Warning";
    case Level::Error: return "Error";
  }
  return "Info";
}

json feedback_json(const Feedback& fb) {
  json contents;
  if (std::holds_alternative<feedback::ProcessingStarted>(fb.contents)) {
    contents = json::array({"ProcessingStarted"});
  } else if (std::holds_alternative<feedback::Processed>(fb.contents)) {
    contents = json::array({"Processed"});
  } else {
    const auto& m = std::get<feedback::Message>(fb.contents);
    contents = json::array({"Message", json::array({level_name(m.level)}), m.text});
  }
  return json{{"id", fb.id.value}, {"contents", std::move(contents)}};
}

json bundle_json(const pkg::Bundle& b) { return json::parse(pkg::to_json(b)); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

json command_json(const Command& c) {
  json out = json::array({constructor_name(c)});
  std::visit(overloaded{
                 [&](const cmd::Init& v) {
                   out.push_back(paths_json(v.loadpath));
                   out.push_back(paths_json(v.init_mods));
                 },
                 [&](const cmd::Add& v) {
                   out.push_back(v.sid.value);
                   out.push_back(v.eid);
                   out.push_back(v.text);
                 },
                 [&](const cmd::Cancel& v) { out.push_back(v.sid.value); },
                 [&](const cmd::Observe& v) { out.push_back(v.sid.value); },
                 [&](const cmd::Goals& v) { out.push_back(v.sid.value); },
                 [&](const cmd::SetOpt& v) {
                   out.push_back(v.global ? json(*v.global) : json(nullptr));
                   out.push_back(path_json(v.path));
                   out.push_back(option_json(v.value));
                 },
                 [&](const cmd::GetOpt& v) { out.push_back(path_json(v.path)); },
                 [&](const cmd::InfoPkg& v) {
                   out.push_back(v.base);
                   out.push_back(v.names);
                 },
                 [&](const cmd::LoadPkg& v) {
                   out.push_back(v.base);
                   out.push_back(v.name);
                 },
                 [&](const cmd::GetInfo&) {},
             },
             c);
  return out;
}

json answer_json(const Answer& a) {
  json out = json::array({constructor_name(a)});
  std::visit(overloaded{
                 [&](const ans::Added& v) { out.push_back(v.sid.value); },
                 [&](const ans::Cancelled& v) {
                   json ids = json::array();
                   for (auto s : v.sids) ids.push_back(s.value);
                   out.push_back(std::move(ids));
                 },
                 [&](const ans::Observed& v) { out.push_back(v.sid.value); },
                 [&](const ans::GoalInfo& v) {
                   out.push_back(v.sid.value);
                   out.push_back(v.text);
                   out.push_back(v.goal_count);
                 },
                 [&](const ans::FeedbackMsg& v) { out.push_back(feedback_json(v.feedback)); },
                 [&](const ans::CoqOpt& v) { out.push_back(option_json(v.value)); },
                 [&](const ans::CoqExn& v) {
                   out.push_back(v.loc ? json{{"start", v.loc->start}, {"end", v.loc->end}} : json(nullptr));
                   out.push_back(v.pair ? json::array({v.pair->first, v.pair->second}) : json(nullptr));
                   out.push_back(v.message);
                 },
                 [&](const ans::JsonExn& v) { out.push_back(v.message); },
                 [&](const ans::LibInfo& v) {
                   out.push_back(v.name);
                   out.push_back(bundle_json(v.bundle));
                 },
                 [&](const ans::LibProgress& v) {
                   out.push_back(json{{"bundle", v.info.bundle},
                                      {"pkg_id", v.info.pkg_id},
                                      {"files_loaded", v.info.files_loaded},
                                      {"files_total", v.info.files_total}});
                 },
                 [&](const ans::LibLoaded& v) { out.push_back(v.name); },
             },
             a);
  return out;
}

// ---- decoding ------------------------------------------------------------

std::int64_t as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    bad(what + " is out of range");
  return j.get<std::int64_t>();
}

std::int64_t as_count(const json& j, const std::string& what) {
  const auto v = as_int(j, what);
  if (v < 0) bad(what + " must be non-negative");
  return v;
}

StateId as_sid(const json& j, const std::string& what) { return StateId{as_int(j, what)}; }

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(as_string(e, what + " element"));
  return out;
}

std::vector<LogicalPath> as_paths(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of paths");
  std::vector<LogicalPath> out;
  for (const auto& e : j) out.push_back(as_strings(e, what + " element"));
  return out;
}

std::optional<bool> as_opt_bool(const json& j, const std::string& what) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_boolean()) bad(what + " must be a bool or null");
  return j.get<bool>();
}

void check_tag(const json& j, const std::string& what, std::size_t arity, const std::string& tag) {
  if (j.size() != arity + 1)
    bad(what + " " + tag + " expects " + std::to_string(arity) + " argument" + (arity == 1 ? "" : "s") +
        ", got " + std::to_string(j.size() - 1));
}

std::string tag_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    bad(what + " must be a constructor-tagged array");
  return j[0].get<std::string>();
}

OptionValue as_option(const json& j) {
  const auto tag = tag_of(j, "option value");
  check_tag(j, "option value", 1, tag);
  if (tag == "Bool") {
    if (!j[1].is_boolean()) bad("Bool payload must be a bool");
    return j[1].get<bool>();
  }
  if (tag == "Int") return as_int(j[1], "Int payload");
  if (tag == "String") return as_string(j[1], "String payload");
  bad("unknown option kind " + tag);
}

void exact_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object");
  if (j.size() != keys.size()) bad(what + " has unexpected keys");
  for (auto k : keys)
    if (!j.contains(k)) bad(what + " is missing \"" + k + "\"");
}

Feedback as_feedback(const json& j) {
  exact_keys(j, {"id", "contents"}, "feedback");
  Feedback fb{as_sid(j["id"], "feedback id"), {}};
  const json& c = j["contents"];
  const auto tag = tag_of(c, "feedback contents");
  if (tag == "ProcessingStarted") {
    check_tag(c, "feedback", 0, tag);
    fb.contents = feedback::ProcessingStarted{};
  } else if (tag == "Processed") {
    check_tag(c, "feedback", 0, tag);
    fb.contents = feedback::Processed{};
  } else if (tag == "Message") {
    check_tag(c, "feedback", 2, tag);
    const auto level = tag_of(c[1], "message level");
    check_tag(c[1], "message level", 0, level);
    feedback::Message m;
    if (level == "Info") m.level = Level::Info;
    else if (level == "Warning") m.level = Level::Warning;
    else if (level == "Error") m.level = Level::Error;
    else bad("unknown message level " + level);
    m.text = as_string(c[2], "message text");
    fb.contents = std::move(m);
  } else {
    bad("unknown feedback constructor " + tag);
  }
  return fb;
}

using CommandDecoder = std::function<Command(const json&)>;
using AnswerDecoder = std::function<Answer(const json&)>;

const std::map<std::string, std::pair<std::size_t, CommandDecoder>, std::less<>>& command_table() {
  static const std::map<std::string, std::pair<std::size_t, CommandDecoder>, std::less<>> table{
      {"Init", {2, [](const json& j) -> Command {
                  return cmd::Init{as_paths(j[1], "Init loadpath"), as_paths(j[2], "Init init_mods")};
                }}},
      {"Add", {3, [](const json& j) -> Command {
                 return cmd::Add{as_sid(j[1], "Add state id"), as_int(j[2], "Add edit id"),
                                 as_string(j[3], "Add text")};
               }}},
      {"Cancel", {1, [](const json& j) -> Command { return cmd::Cancel{as_sid(j[1], "Cancel state id")}; }}},
      {"Observe", {1, [](const json& j) -> Command { return cmd::Observe{as_sid(j[1], "Observe state id")}; }}},
      {"Goals", {1, [](const json& j) -> Command { return cmd::Goals{as_sid(j[1], "Goals state id")}; }}},
      {"SetOpt", {3, [](const json& j) -> Command {
                    return cmd::SetOpt{as_opt_bool(j[1], "SetOpt flag"), as_strings(j[2], "SetOpt path"),
                                       as_option(j[3])};
                  }}},
      {"GetOpt", {1, [](const json& j) -> Command { return cmd::GetOpt{as_strings(j[1], "GetOpt path")}; }}},
      {"InfoPkg", {2, [](const json& j) -> Command {
                     return cmd::InfoPkg{as_string(j[1], "InfoPkg base"), as_strings(j[2], "InfoPkg names")};
                   }}},
      {"LoadPkg", {2, [](const json& j) -> Command {
                     return cmd::LoadPkg{as_string(j[1], "LoadPkg base"), as_string(j[2], "LoadPkg name")};
                   }}},
      {"GetInfo", {0, [](const json&) -> Command { return cmd::GetInfo{}; }}},
  };
  return table;
}

const std::map<std::string, std::pair<std::size_t, AnswerDecoder>, std::less<>>& answer_table() {
  static const std::map<std::string, std::pair<std::size_t, AnswerDecoder>, std::less<>> table{
      {"Added", {1, [](const json& j) -> Answer { return ans::Added{as_sid(j[1], "Added state id")}; }}},
      {"Cancelled", {1, [](const json& j) -> Answer {
                       if (!j[1].is_array()) bad("Cancelled payload must be an array");
                       ans::Cancelled c;
                       for (const auto& e : j[1]) c.sids.push_back(as_sid(e, "Cancelled state id"));
                       return c;
                     }}},
      {"Observed", {1, [](const json& j) -> Answer { return ans::Observed{as_sid(j[1], "Observed state id")}; }}},
      {"GoalInfo", {3, [](const json& j) -> Answer {
                      return ans::GoalInfo{as_sid(j[1], "GoalInfo state id"), as_string(j[2], "GoalInfo text"),
                                           as_count(j[3], "GoalInfo goal count")};
                    }}},
      {"Feedback", {1, [](const json& j) -> Answer { return ans::FeedbackMsg{as_feedback(j[1])}; }}},
      {"CoqOpt", {1, [](const json& j) -> Answer { return ans::CoqOpt{as_option(j[1])}; }}},
      {"CoqExn", {3, [](const json& j) -> Answer {
                    ans::CoqExn e;
                    if (!j[1].is_null()) {
                      exact_keys(j[1], {"start", "end"}, "loc");
                      e.loc = Loc{static_cast<std::size_t>(as_count(j[1]["start"], "loc start")),
                                  static_cast<std::size_t>(as_count(j[1]["end"], "loc end"))};
                    }
                    if (!j[2].is_null()) {
                      if (!j[2].is_array() || j[2].size() != 2) bad("CoqExn pair must be a 2-element array");
                      e.pair = std::pair{as_int(j[2][0], "CoqExn pair"), as_int(j[2][1], "CoqExn pair")};
                    }
                    e.message = as_string(j[3], "CoqExn message");
                    return e;
                  }}},
      {"JsonExn", {1, [](const json& j) -> Answer { return ans::JsonExn{as_string(j[1], "JsonExn message")}; }}},
      {"LibInfo", {2, [](const json& j) -> Answer {
                     ans::LibInfo info{as_string(j[1], "LibInfo name"), {}};
                     try {
                       info.bundle = pkg::parse_bundle(dump(j[2]));
                     } catch (const pkg::ManifestError& e) {
                       bad(std::string("LibInfo bundle: ") + e.what());
                     }
                     return info;
                   }}},
      {"LibProgress", {1, [](const json& j) -> Answer {
                         const json& o = j[1];
                         exact_keys(o, {"bundle", "pkg_id", "files_loaded", "files_total"}, "progress info");
                         pkg::ProgressInfo p{as_string(o["bundle"], "progress bundle"),
                                             as_strings(o["pkg_id"], "progress pkg_id"),
                                             static_cast<int>(as_count(o["files_loaded"], "files_loaded")),
                                             static_cast<int>(as_count(o["files_total"], "files_total"))};
                         return ans::LibProgress{std::move(p)};
                       }}},
      {"LibLoaded", {1, [](const json& j) -> Answer { return ans::LibLoaded{as_string(j[1], "LibLoaded name")}; }}},
  };
  return table;
}

template <class Result, class Table>
std::variant<Result, ans::JsonExn> decode_with(std::string_view text, const Table& table, const std::string& what) {
  try {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      return ans::JsonExn{std::string("malformed JSON: ") + e.what()};
    }
    const auto tag = tag_of(j, what);
    auto it = table.find(tag);
    if (it == table.end()) return ans::JsonExn{"unknown constructor " + tag};
    check_tag(j, what, it->second.first, tag);
    return it->second.second(j);
  } catch (const DecodeError& e) {
    return ans::JsonExn{e.message};
  } catch (const json::exception& e) {
    return ans::JsonExn{e.what()};
  }
}

}  // namespace

std::string encode(const Command& command) { return dump(command_json(command)); }
std::string encode(const Answer& answer) { return dump(answer_json(answer)); }

std::variant<Command, ans::JsonExn> decode_command(std::string_view text) {
  return decode_with<Command>(text, command_table(), "command");
}

std::variant<Answer, ans::JsonExn> decode_answer(std::string_view text) {
  return decode_with<Answer>(text, answer_table(), "answer");
}

}  // namespace proofdeck

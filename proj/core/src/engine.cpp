#include "proofdeck/engine.hpp"

#include "proofdeck/codec.hpp"

namespace proofdeck {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

ans::CoqExn to_answer(const EngineError& e) { return {e.loc(), e.pair(), e.what()}; }

}  // namespace

Engine::Engine(std::vector<std::filesystem::path> roots)
    : packages_(std::move(roots)), stm_(packages_, [this](const Feedback& fb) {
        if (sink_) (*sink_)(ans::FeedbackMsg{fb});
      }) {}

void Engine::handle(const Command& command, const AnswerSink& sink) {
  sink_ = &sink;
  try {
    dispatch(command);
  } catch (const EngineError& e) {
    sink(to_answer(e));
  } catch (const std::exception& e) {
    sink(ans::CoqExn{std::nullopt, std::nullopt, e.what()});
  }
  sink_ = nullptr;
}

void Engine::dispatch(const Command& command) {
  const AnswerSink& sink = *sink_;
  std::visit(
      overloaded{
          [&](const cmd::Init& c) { sink(ans::Observed{stm_.init(c.loadpath, c.init_mods)}); },
          [&](const cmd::Add& c) { sink(ans::Added{stm_.add(c.sid, c.eid, c.text)}); },
          [&](const cmd::Cancel& c) { sink(ans::Cancelled{stm_.cancel(c.sid)}); },
          [&](const cmd::Observe& c) {
            stm_.observe(c.sid);
            sink(ans::Observed{c.sid});
          },
          [&](const cmd::Goals& c) {
            auto view = stm_.goals(c.sid);
            sink(ans::GoalInfo{view.id, std::move(view.text), static_cast<std::int64_t>(view.goal_count)});
          },
          [&](const cmd::SetOpt& c) {
            stm_.set_opt(c.global, c.path, c.value);
            sink(ans::CoqOpt{stm_.get_opt(c.path)});
          },
          [&](const cmd::GetOpt& c) { sink(ans::CoqOpt{stm_.get_opt(c.path)}); },
          [&](const cmd::InfoPkg& c) {
            for (const auto& name : c.names) {
              try {
                sink(ans::LibInfo{name, packages_.read_bundle(c.base, name)});
              } catch (const pkg::ManifestError& e) {
                sink(ans::CoqExn{std::nullopt, std::nullopt, name + ": " + e.what()});
              }
            }
          },
          [&](const cmd::LoadPkg& c) {
            pkg::LoadEvents events{
                [&](const pkg::ProgressInfo& p) { sink(ans::LibProgress{p}); },
                [&](const std::string& bundle) { sink(ans::LibLoaded{bundle}); },
                [&](const std::string& msg) {
                  sink(ans::FeedbackMsg{Feedback{StateId{0}, feedback::Message{Level::Warning, msg}}});
                },
            };
            try {
              packages_.load_bundle(c.base, c.name, events);
            } catch (const pkg::LoadError& e) {
              sink(ans::CoqExn{std::nullopt, std::nullopt, c.name + ": " + e.what()});
            }
          },
          [&](const cmd::GetInfo&) {
            std::string text = std::string(kEngineName) + " " + std::string(kEngineVersion) + "; roots:";
            for (const auto& r : packages_.roots()) text += " " + r.generic_string();
            sink(ans::FeedbackMsg{Feedback{StateId{0}, feedback::Message{Level::Info, text}}});
          },
      },
      command);
}

std::vector<std::string> Engine::handle_json(std::string_view message) {
  std::vector<std::string> out;
  auto decoded = decode_command(message);
  if (auto* err = std::get_if<ans::JsonExn>(&decoded)) {
    out.push_back(encode(Answer{*err}));
    return out;
  }
  const AnswerSink sink = [&](const Answer& a) { out.push_back(encode(a)); };
  handle(std::get<Command>(decoded), sink);
  return out;
}

}  // namespace proofdeck

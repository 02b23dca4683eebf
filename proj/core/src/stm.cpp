#include "proofdeck/stm.hpp"

#include <algorithm>

#include "proofdeck/lexer.hpp"
#include "proofdeck/pkg.hpp"

namespace proofdeck {

Stm::Stm(pkg::Manager& packages, FeedbackSink sink) : packages_(packages), sink_(std::move(sink)) {}

void Stm::require_init() const {
  if (!initialized_) throw EngineError("engine not initialized");
}

ModuleResolver Stm::resolver() const {
  return [this](const LogicalPath& module) {
    try {
      return packages_.require(module);
    } catch (const pkg::LoadError& e) {
      throw ExecError(e.what());
    }
  };
}

void Stm::emit(StateId id, FeedbackContents contents) {
  if (sink_) sink_(Feedback{id, std::move(contents)});
}

StateId Stm::init(const std::vector<LogicalPath>& loadpath, const std::vector<LogicalPath>& init_mods) {
  initialized_ = false;
  chain_.clear();
  next_id_ = kInitialState.value + 1;
  options_ = OptionTable{};
  packages_.set_loadpath(loadpath);

  Snapshot snap;
  for (const auto& mod : init_mods) {
    try {
      auto r = exec_vernac(snap.env, std::nullopt, vernac::RequireImport{mod}, resolver());
      snap.env = std::move(r.env);
    } catch (const ExecError& e) {
      throw EngineError(e.what());
    }
  }
  chain_.push_back(DocState{kInitialState, kInitialState, {}, vernac::ProofMarker{}, Status::Processed,
                            std::move(snap), std::nullopt});
  initialized_ = true;
  return kInitialState;
}

std::size_t Stm::index_of(StateId sid) const {
  auto it = std::lower_bound(chain_.begin(), chain_.end(), sid,
                             [](const DocState& s, StateId id) { return s.id < id; });
  if (it == chain_.end() || it->id != sid) throw EngineError("unknown state " + std::to_string(sid.value));
  return static_cast<std::size_t>(it - chain_.begin());
}

const DocState* Stm::find(StateId sid) const {
  auto it = std::lower_bound(chain_.begin(), chain_.end(), sid,
                             [](const DocState& s, StateId id) { return s.id < id; });
  return it == chain_.end() || it->id != sid ? nullptr : &*it;
}

StateId Stm::tip() const {
  require_init();
  return chain_.back().id;
}

StateId Stm::add(StateId sid, std::int64_t eid, std::string_view cmd) {
  require_init();
  const std::size_t idx = index_of(sid);
  if (idx + 1 != chain_.size()) throw EngineError("not at tip");
  if (chain_[idx].status == Status::Errored)
    throw EngineError("cannot add on top of errored state " + std::to_string(sid.value));

  const std::pair<std::int64_t, std::int64_t> where{sid.value, eid};
  std::vector<Sentence> sentences;
  try {
    sentences = split(cmd);
  } catch (const LexError& e) {
    throw EngineError(Loc{e.offset(), e.end()}, where, e.what());
  }
  if (sentences.size() != 1)
    throw EngineError(Loc{0, cmd.size()}, where,
                      "expected exactly one sentence, found " + std::to_string(sentences.size()));

  const Sentence& s = sentences.front();
  Vernac parsed;
  try {
    parsed = parse_vernac(s.text);
  } catch (const ParseError& e) {
    throw EngineError(Loc{s.start + e.offset(), s.start + e.end()}, where, e.what());
  }

  const StateId id{next_id_++};
  chain_.push_back(DocState{id, sid, std::string(cmd), std::move(parsed), Status::Parsed, std::nullopt,
                            std::nullopt});
  return id;
}

void Stm::observe(StateId sid) {
  require_init();
  const std::size_t target = index_of(sid);

  // Statuses along the chain are a Processed prefix, then possibly one
  // Errored state, then Parsed ones.
  std::size_t first = 0;
  while (first <= target && chain_[first].status == Status::Processed) ++first;
  if (first > target) return;
  if (chain_[first].status == Status::Errored) throw *chain_[first].error;

  for (std::size_t i = first; i <= target; ++i) {
    DocState& st = chain_[i];
    const Snapshot& prev = *chain_[i - 1].snapshot;
    st.status = Status::Processing;
    emit(st.id, feedback::ProcessingStarted{});
    try {
      ProofEnv env = prev.env;
      env.options() = options_;
      auto r = exec_vernac(env, prev.proof, st.sentence, resolver());
      st.snapshot = Snapshot{std::move(r.env), std::move(r.proof)};
      st.status = Status::Processed;
      if (!options_.flag(kSilent))
        for (auto& m : r.messages) emit(st.id, feedback::Message{Level::Info, std::move(m)});
      emit(st.id, feedback::Processed{});
    } catch (const ExecError& e) {
      st.status = Status::Errored;
      st.error.emplace(std::nullopt, std::pair{chain_[i - 1].id.value, st.id.value}, e.what());
      throw *st.error;
    }
  }
}

std::vector<StateId> Stm::cancel(StateId sid) {
  require_init();
  if (sid == kInitialState) throw EngineError("cannot cancel initial state");
  const std::size_t idx = index_of(sid);
  std::vector<StateId> removed;
  removed.reserve(chain_.size() - idx);
  for (std::size_t i = idx; i < chain_.size(); ++i) removed.push_back(chain_[i].id);
  chain_.erase(chain_.begin() + static_cast<std::ptrdiff_t>(idx), chain_.end());
  return removed;
}

GoalView Stm::goals(StateId sid) const {
  require_init();
  const DocState& st = chain_[index_of(sid)];
  if (st.status != Status::Processed) throw EngineError("state not evaluated; observe first");
  GoalView view{sid, {}, 0};
  if (!st.snapshot->proof) return view;
  const auto& goals = st.snapshot->proof->goals;
  const bool compact = options_.flag(kPrintingCompact);
  view.goal_count = goals.size();
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i) view.text += compact ? "\n" : "\n\n";
    view.text += pretty_goal(goals[i], compact);
  }
  return view;
}

void Stm::set_opt(std::optional<bool>, const OptionPath& path, OptionValue value) {
  require_init();
  try {
    options_.set(path, std::move(value));
  } catch (const OptionError& e) {
    throw EngineError(e.what());
  }
}

OptionValue Stm::get_opt(const OptionPath& path) const {
  require_init();
  try {
    return options_.get(path);
  } catch (const OptionError& e) {
    throw EngineError(e.what());
  }
}

}  // namespace proofdeck

#include "proofdeck/kernel.hpp"

#include <algorithm>
#include <type_traits>

namespace proofdeck {

ProofEnv::ProofEnv() : lemmas_(std::make_shared<const LemmaMap>()) {}

const Prop* ProofEnv::find(const std::string& name) const {
  auto it = lemmas_->find(name);
  return it == lemmas_->end() ? nullptr : &it->second;
}

void ProofEnv::define(const std::string& name, Prop statement) {
  if (lemmas_->contains(name)) throw ExecError(name + " already defined");
  auto next = std::make_shared<LemmaMap>(*lemmas_);
  next->emplace(name, std::move(statement));
  lemmas_ = std::move(next);
}

bool ProofEnv::has_imported(const LogicalPath& module) const { return imported_.contains(module); }

void ProofEnv::import(const LogicalPath& module, const LemmaMap& lemmas) {
  if (has_imported(module)) return;
  for (const auto& [name, _] : lemmas)
    if (lemmas_->contains(name)) throw ExecError(name + " already defined");
  auto next = std::make_shared<LemmaMap>(*lemmas_);
  next->insert(lemmas.begin(), lemmas.end());
  lemmas_ = std::move(next);
  imported_.insert(module);
}

bool operator==(const ProofEnv& a, const ProofEnv& b) {
  return (a.lemmas_ == b.lemmas_ || *a.lemmas_ == *b.lemmas_) && a.imported_ == b.imported_ &&
         a.options_ == b.options_;
}

const Hypothesis* Goal::find(const std::string& name) const {
  for (const auto& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

std::string fresh_name(const Goal& goal) {
  if (!goal.find("H")) return "H";
  for (int i = 0;; ++i) {
    std::string candidate = "H" + std::to_string(i);
    if (!goal.find(candidate)) return candidate;
  }
}

namespace {

using Kind = Prop::Kind;

const Prop& lookup(const ProofEnv& env, const Goal& goal, const std::string& name) {
  if (const auto* h = goal.find(name)) return h->statement;
  if (const auto* p = env.find(name)) return *p;
  throw ExecError("No such hypothesis or lemma " + name);
}

// Replacement goals for the focused one.
std::vector<Goal> step(const ProofEnv& env, const Goal& goal, const Tactic& tactic) {
  const Prop& concl = goal.conclusion;
  switch (tactic.kind) {
    case Tactic::Kind::Intro: {
      if (concl.kind() != Kind::Imp) throw ExecError("intro expects an implication or negation");
      std::string name = tactic.arg.empty() ? fresh_name(goal) : tactic.arg;
      if (goal.find(name)) throw ExecError(name + " is already used");
      Goal next = goal;
      next.hypotheses.push_back({std::move(name), concl.lhs()});
      next.conclusion = concl.rhs();
      return {std::move(next)};
    }
    case Tactic::Kind::Exact: {
      if (tactic.arg == "I") {
        if (concl.kind() != Kind::True) throw ExecError("I proves only True");
        return {};
      }
      if (!(lookup(env, goal, tactic.arg) == concl))
        throw ExecError("the type of " + tactic.arg + " does not match the goal");
      return {};
    }
    case Tactic::Kind::Assumption: {
      for (const auto& h : goal.hypotheses)
        if (h.statement == concl) return {};
      throw ExecError("no hypothesis matches the goal");
    }
    case Tactic::Kind::Split: {
      if (concl.kind() != Kind::And) throw ExecError("split expects a conjunction");
      Goal a = goal, b = goal;
      a.conclusion = concl.lhs();
      b.conclusion = concl.rhs();
      return {std::move(a), std::move(b)};
    }
    case Tactic::Kind::Left:
    case Tactic::Kind::Right: {
      if (concl.kind() != Kind::Or)
        throw ExecError(std::string(tactic_name(tactic.kind)) + " expects a disjunction");
      Goal next = goal;
      next.conclusion = tactic.kind == Tactic::Kind::Left ? concl.lhs() : concl.rhs();
      return {std::move(next)};
    }
    case Tactic::Kind::Apply: {
      // Only the end of the implication spine is matched against the goal.
      const Prop& fn = lookup(env, goal, tactic.arg);
      std::vector<Prop> premises;
      const Prop* tail = &fn;
      while (tail->kind() == Kind::Imp) {
        premises.push_back(tail->lhs());
        tail = &tail->rhs();
      }
      if (!(*tail == concl)) throw ExecError("no matching premise chain for apply " + tactic.arg);
      std::vector<Goal> out;
      out.reserve(premises.size());
      for (auto& p : premises) {
        Goal g = goal;
        g.conclusion = std::move(p);
        out.push_back(std::move(g));
      }
      return out;
    }
    case Tactic::Kind::Destruct: {
      auto it = std::find_if(goal.hypotheses.begin(), goal.hypotheses.end(),
                             [&](const Hypothesis& h) { return h.name == tactic.arg; });
      if (it == goal.hypotheses.end()) throw ExecError("No such hypothesis " + tactic.arg);
      const Prop target = it->statement;
      Goal base = goal;
      const auto pos = base.hypotheses.erase(base.hypotheses.begin() + (it - goal.hypotheses.begin()));
      const auto index = pos - base.hypotheses.begin();
      if (target.kind() == Kind::And) {
        Goal g = base;
        std::string first = fresh_name(g);
        g.hypotheses.insert(g.hypotheses.begin() + index, {first, target.lhs()});
        std::string second = fresh_name(g);
        g.hypotheses.insert(g.hypotheses.begin() + index + 1, {second, target.rhs()});
        return {std::move(g)};
      }
      if (target.kind() == Kind::Or) {
        const std::string name = fresh_name(base);
        Goal l = base, r = base;
        l.hypotheses.insert(l.hypotheses.begin() + index, {name, target.lhs()});
        r.hypotheses.insert(r.hypotheses.begin() + index, {name, target.rhs()});
        return {std::move(l), std::move(r)};
      }
      throw ExecError("destruct expects a conjunction or disjunction");
    }
    case Tactic::Kind::Exfalso: {
      Goal next = goal;
      next.conclusion = Prop::falsity();
      return {std::move(next)};
    }
    case Tactic::Kind::Contradiction: {
      for (const auto& h : goal.hypotheses)
        if (h.statement.kind() == Kind::False) return {};
      throw ExecError("no False hypothesis for contradiction");
    }
  }
  throw ExecError("unknown tactic");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::vector<Goal> apply_tactic(const ProofEnv& env, const std::vector<Goal>& goals,
                               const Tactic& tactic) {
  if (goals.empty()) throw ExecError("Not in proof mode: no goals remain");
  // One tactic per sentence, so any limit below one stops everything.
  if (env.options().integer(kProofStepLimit) < 1) throw ExecError("step limit exceeded");
  std::vector<Goal> out = step(env, goals.front(), tactic);
  out.insert(out.end(), goals.begin() + 1, goals.end());
  return out;
}

ExecResult exec_vernac(const ProofEnv& env, const std::optional<ProofState>& proof,
                       const Vernac& sentence, const ModuleResolver& resolver) {
  ExecResult r{env, proof, {}};
  auto require_proof = [&]() -> ProofState& {
    if (!r.proof) throw ExecError("Not in proof mode");
    return *r.proof;
  };
  auto require_no_proof = [&] {
    if (r.proof) throw ExecError("Nested proofs are not allowed; finish " + r.proof->lemma_name + " first");
  };

  std::visit(
      overloaded{
          [&](const vernac::Lemma& v) {
            require_no_proof();
            if (r.env.find(v.name)) throw ExecError(v.name + " already defined");
            r.proof = ProofState{v.name, v.statement, {Goal{{}, v.statement}}};
          },
          [&](const vernac::Parameter& v) {
            require_no_proof();
            r.env.define(v.name, v.statement);
          },
          [&](const vernac::ProofMarker&) { require_proof(); },
          [&](const vernac::Qed&) {
            ProofState& ps = require_proof();
            if (!ps.goals.empty()) throw ExecError("Proof not finished");
            r.env.define(ps.lemma_name, ps.lemma_statement);
            r.proof.reset();
          },
          [&](const vernac::Check& v) {
            const Prop* found = nullptr;
            if (r.proof && !r.proof->goals.empty())
              if (const auto* h = r.proof->goals.front().find(v.name)) found = &h->statement;
            if (!found) found = r.env.find(v.name);
            if (!found) throw ExecError("No such hypothesis or lemma " + v.name);
            r.messages.push_back(v.name + " : " + pretty(*found));
          },
          [&](const vernac::RequireImport& v) {
            if (r.env.has_imported(v.module)) return;
            if (!resolver) throw ExecError("cannot find module " + dotted(v.module));
            auto lemmas = resolver(v.module);
            if (!lemmas) throw ExecError("cannot find module " + dotted(v.module));
            r.env.import(v.module, *lemmas);
          },
          [&](const vernac::RunTactic& v) {
            ProofState& ps = require_proof();
            ps.goals = apply_tactic(r.env, ps.goals, v.tactic);
          },
      },
      sentence);
  return r;
}

std::string pretty_goal(const Goal& goal, bool compact) {
  std::string out;
  if (compact) {
    for (std::size_t i = 0; i < goal.hypotheses.size(); ++i) {
      if (i) out += ", ";
      out += goal.hypotheses[i].name + ":" + pretty(goal.hypotheses[i].statement);
    }
    if (!out.empty()) out += ' ';
    out += "⊢ " + pretty(goal.conclusion);
    return out;
  }
  for (const auto& h : goal.hypotheses) out += h.name + " : " + pretty(h.statement) + "\n";
  out += "============\n";
  out += pretty(goal.conclusion);
  return out;
}

}  // namespace proofdeck

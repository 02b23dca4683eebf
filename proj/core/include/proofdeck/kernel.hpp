#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofdeck/common.hpp"
#include "proofdeck/options.hpp"
#include "proofdeck/prop.hpp"
#include "proofdeck/vernac.hpp"

namespace proofdeck {

using LemmaMap = std::map<std::string, Prop>;

/// Global environment: proved lemmas, axioms, imported modules and options.
/// Copies share the lemma table until one of them defines something new.
class ProofEnv {
 public:
  ProofEnv();

  const LemmaMap& lemmas() const noexcept { return *lemmas_; }
  const Prop* find(const std::string& name) const;

  /// Throws ExecError("<name> already defined") on redefinition.
  void define(const std::string& name, Prop statement);

  bool has_imported(const LogicalPath& module) const;
  /// Merges a module's lemmas. A module already imported is a no-op.
  void import(const LogicalPath& module, const LemmaMap& lemmas);

  OptionTable& options() noexcept { return options_; }
  const OptionTable& options() const noexcept { return options_; }

  friend bool operator==(const ProofEnv& a, const ProofEnv& b);

 private:
  std::shared_ptr<const LemmaMap> lemmas_;
  std::set<LogicalPath> imported_;
  OptionTable options_;
};

struct Hypothesis {
  std::string name;
  Prop statement;
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct Goal {
  std::vector<Hypothesis> hypotheses;
  Prop conclusion;

  const Hypothesis* find(const std::string& name) const;
  friend bool operator==(const Goal&, const Goal&) = default;
};

struct ProofState {
  std::string lemma_name;
  Prop lemma_statement;
  /// Focused goal first.
  std::vector<Goal> goals;
  friend bool operator==(const ProofState&, const ProofState&) = default;
};

/// Picks `H`, `H0`, `H1`, ... skipping names already bound in `goal`.
std::string fresh_name(const Goal& goal);

/// Rewrites the focused goal (the head of `goals`) and returns the new goal
/// list. Goals after the head are carried over unchanged. Throws ExecError
/// when the tactic does not fit the goal.
std::vector<Goal> apply_tactic(const ProofEnv& env, const std::vector<Goal>& goals,
                               const Tactic& tactic);

/// Resolves `Require Import` targets to the lemmas the module exports, or
/// null when there is no such module.
using ModuleResolver =
    std::function<std::shared_ptr<const LemmaMap>(const LogicalPath& module)>;

struct ExecResult {
  ProofEnv env;
  std::optional<ProofState> proof;
  std::vector<std::string> messages;
};

/// Executes one sentence. Pure in (env, proof, sentence) given a
/// deterministic resolver.
ExecResult exec_vernac(const ProofEnv& env, const std::optional<ProofState>& proof,
                       const Vernac& sentence, const ModuleResolver& resolver = {});

std::string pretty_goal(const Goal& goal, bool compact);

}  // namespace proofdeck

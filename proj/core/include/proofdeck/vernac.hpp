#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "proofdeck/common.hpp"
#include "proofdeck/prop.hpp"

namespace proofdeck {

struct Tactic {
  enum class Kind {
    Intro,
    Exact,
    Assumption,
    Split,
    Left,
    Right,
    Apply,
    Destruct,
    Exfalso,
    Contradiction,
  };

  Kind kind{};
  /// Hypothesis or lemma argument; empty when the tactic takes none
  /// (or, for intro, when the name is left to the fresh-name scheme).
  std::string arg;

  friend bool operator==(const Tactic&, const Tactic&) = default;
};

std::string_view tactic_name(Tactic::Kind kind) noexcept;

namespace vernac {

struct Lemma {
  std::string name;
  Prop statement;
  friend bool operator==(const Lemma&, const Lemma&) = default;
};

struct Parameter {
  std::string name;
  Prop statement;
  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct ProofMarker {
  friend bool operator==(const ProofMarker&, const ProofMarker&) = default;
};

struct Qed {
  friend bool operator==(const Qed&, const Qed&) = default;
};

struct Check {
  std::string name;
  friend bool operator==(const Check&, const Check&) = default;
};

struct RequireImport {
  LogicalPath module;
  friend bool operator==(const RequireImport&, const RequireImport&) = default;
};

struct RunTactic {
  Tactic tactic;
  friend bool operator==(const RunTactic&, const RunTactic&) = default;
};

}  // namespace vernac

using Vernac = std::variant<vernac::Lemma, vernac::Parameter, vernac::ProofMarker,
                            vernac::Qed, vernac::Check, vernac::RequireImport,
                            vernac::RunTactic>;

/// Parses one sentence, terminator included. Offsets in the thrown
/// ParseError are relative to the start of `sentence`.
Vernac parse_vernac(std::string_view sentence);

}  // namespace proofdeck

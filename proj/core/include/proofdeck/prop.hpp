#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "proofdeck/common.hpp"

namespace proofdeck {

/// Immutable propositional formula. Negation is stored as `p -> False`,
/// so `~A` and `A -> False` are the same value.
class Prop {
 public:
  enum class Kind { Atom, True, False, And, Or, Imp };

  /// `True`.
  Prop() = default;

  static Prop atom(std::string name);
  static Prop truth();
  static Prop falsity();
  static Prop conj(Prop lhs, Prop rhs);
  static Prop disj(Prop lhs, Prop rhs);
  static Prop imp(Prop lhs, Prop rhs);
  static Prop negation(Prop p);

  Kind kind() const noexcept;
  /// Atom name; empty for every other kind.
  const std::string& name() const noexcept;
  const Prop& lhs() const;
  const Prop& rhs() const;

  bool is_negation() const noexcept;

  friend bool operator==(const Prop& a, const Prop& b);

 private:
  struct Node;
  explicit Prop(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool is_identifier(std::string_view text) noexcept;
bool is_reserved(std::string_view word) noexcept;

/// Parses a formula. Precedence, tightest first: `~`, `/\`, `\/`, `->`.
/// `->` associates to the right, the binary connectives to the left.
/// Throws ParseError carrying the offset of the first offending token.
Prop parse_prop(std::string_view src);

/// Prints with the minimal parenthesization that parse_prop reads back.
std::string pretty(const Prop& p);

}  // namespace proofdeck

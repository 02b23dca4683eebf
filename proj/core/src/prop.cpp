#include "proofdeck/prop.hpp"

#include <array>
#include <cassert>

#include "scanner.hpp"

namespace proofdeck {

struct Prop::Node {
  Kind kind;
  std::string name;
  Prop lhs;
  Prop rhs;
};

namespace {

const std::string kEmpty;

constexpr std::array kReserved = {
    std::string_view{"True"},  std::string_view{"False"},     std::string_view{"Lemma"},
    std::string_view{"Proof"}, std::string_view{"Qed"},       std::string_view{"Parameter"},
    std::string_view{"Check"}, std::string_view{"Require"},   std::string_view{"Import"},
    std::string_view{"I"},
};

}  // namespace

std::string dotted(const LogicalPath& path) {
  std::string out;
  for (const auto& seg : path) {
    if (!out.empty()) out += '.';
    out += seg;
  }
  return out;
}

LogicalPath split_dotted(std::string_view text) {
  LogicalPath out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto dot = text.find('.', start);
    const auto stop = dot == std::string_view::npos ? text.size() : dot;
    out.emplace_back(text.substr(start, stop - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

Prop Prop::atom(std::string name) {
  return Prop(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}}));
}

Prop Prop::truth() {
  static const Prop t(std::make_shared<const Node>(Node{Kind::True, {}, {}, {}}));
  return t;
}

Prop Prop::falsity() {
  static const Prop f(std::make_shared<const Node>(Node{Kind::False, {}, {}, {}}));
  return f;
}

Prop Prop::conj(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<const Node>(Node{Kind::And, {}, std::move(lhs), std::move(rhs)}));
}

Prop Prop::disj(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(lhs), std::move(rhs)}));
}

Prop Prop::imp(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<const Node>(Node{Kind::Imp, {}, std::move(lhs), std::move(rhs)}));
}

Prop Prop::negation(Prop p) { return imp(std::move(p), falsity()); }

Prop::Kind Prop::kind() const noexcept { return node_ ? node_->kind : Kind::True; }

const std::string& Prop::name() const noexcept { return node_ ? node_->name : kEmpty; }

const Prop& Prop::lhs() const {
  assert(node_ && node_->lhs.node_);
  return node_->lhs;
}

const Prop& Prop::rhs() const {
  assert(node_ && node_->rhs.node_);
  return node_->rhs;
}

bool Prop::is_negation() const noexcept {
  return kind() == Kind::Imp && node_->rhs.kind() == Kind::False;
}

bool operator==(const Prop& a, const Prop& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Prop::Kind::True:
    case Prop::Kind::False:
      return true;
    case Prop::Kind::Atom:
      return a.name() == b.name();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!start(text.front())) return false;
  for (char c : text.substr(1))
    if (!start(c) && !(c >= '0' && c <= '9') && c != '\'') return false;
  return true;
}

bool is_reserved(std::string_view word) noexcept {
  for (auto r : kReserved)
    if (r == word) return true;
  return false;
}

namespace detail {

// Recursive descent over the shared scanner:
//   imp   := or ('->' imp)?
//   or    := and ('\/' and)*
//   and   := unary ('/\' unary)*
//   unary := '~' unary | 'True' | 'False' | ident | '(' imp ')'
class PropParser {
 public:
  explicit PropParser(Scanner& scanner) : sc_(scanner) {}

  Prop implication() {
    Prop lhs = disjunction();
    if (sc_.peek().kind == TokenKind::Arrow) {
      sc_.next();
      return Prop::imp(std::move(lhs), implication());
    }
    return lhs;
  }

 private:
  Prop disjunction() {
    Prop lhs = conjunction();
    while (sc_.peek().kind == TokenKind::Or) {
      sc_.next();
      lhs = Prop::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Prop conjunction() {
    Prop lhs = unary();
    while (sc_.peek().kind == TokenKind::And) {
      sc_.next();
      lhs = Prop::conj(std::move(lhs), unary());
    }
    return lhs;
  }

  Prop unary() {
    const Token t = sc_.next();
    switch (t.kind) {
      case TokenKind::Tilde:
        return Prop::negation(unary());
      case TokenKind::LParen: {
        Prop inner = implication();
        const Token close = sc_.next();
        if (close.kind != TokenKind::RParen)
          throw ParseError(close.offset, close.end(), "expected ')' but found " + describe(close));
        return inner;
      }
      case TokenKind::Ident:
        if (t.text == "True") return Prop::truth();
        if (t.text == "False") return Prop::falsity();
        if (!is_identifier(t.text))
          throw ParseError(t.offset, t.end(), "qualified name " + describe(t) + " is not a proposition");
        if (is_reserved(t.text))
          throw ParseError(t.offset, t.end(), "reserved word " + describe(t) + " cannot name a proposition");
        return Prop::atom(std::string(t.text));
      default:
        throw ParseError(t.offset, t.end(), "expected a proposition but found " + describe(t));
    }
  }

  Scanner& sc_;
};

Prop parse_prop_tokens(Scanner& scanner) { return PropParser(scanner).implication(); }

}  // namespace detail

Prop parse_prop(std::string_view src) {
  detail::Scanner scanner(src);
  Prop p = detail::parse_prop_tokens(scanner);
  const auto& t = scanner.peek();
  if (t.kind != detail::TokenKind::End)
    throw ParseError(t.offset, t.end(), "unexpected " + detail::describe(t) + " after proposition");
  return p;
}

namespace {

// Binding strength; higher binds tighter.
enum Level { kImp = 1, kOr = 2, kAnd = 3, kNot = 4, kAtom = 5 };

Level level_of(const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Imp: return p.is_negation() ? kNot : kImp;
    case Prop::Kind::Or: return kOr;
    case Prop::Kind::And: return kAnd;
    default: return kAtom;
  }
}

void print(const Prop& p, int min_level, std::string& out) {
  const Level lvl = level_of(p);
  const bool parens = lvl < min_level;
  if (parens) out += '(';
  switch (p.kind()) {
    case Prop::Kind::Atom: out += p.name(); break;
    case Prop::Kind::True: out += "True"; break;
    case Prop::Kind::False: out += "False"; break;
    case Prop::Kind::And:
      print(p.lhs(), kAnd, out);
      out += " /\\ ";
      print(p.rhs(), kAnd + 1, out);
      break;
    case Prop::Kind::Or:
      print(p.lhs(), kOr, out);
      out += " \\/ ";
      print(p.rhs(), kOr + 1, out);
      break;
    case Prop::Kind::Imp:
      if (p.is_negation()) {
        out += '~';
        print(p.lhs(), kNot, out);
      } else {
        print(p.lhs(), kImp + 1, out);
        out += " -> ";
        print(p.rhs(), kImp, out);
      }
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string pretty(const Prop& p) {
  std::string out;
  print(p, kImp, out);
  return out;
}

}  // namespace proofdeck

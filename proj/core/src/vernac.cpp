#include "proofdeck/vernac.hpp"

#include <array>
#include <optional>
#include <utility>

#include "scanner.hpp"

namespace proofdeck {

namespace detail {
Prop parse_prop_tokens(Scanner& scanner);
}

namespace {

using detail::Scanner;
using detail::Token;
using detail::TokenKind;

constexpr std::array<std::pair<std::string_view, Tactic::Kind>, 10> kTactics{{
    {"intro", Tactic::Kind::Intro},
    {"exact", Tactic::Kind::Exact},
    {"assumption", Tactic::Kind::Assumption},
    {"split", Tactic::Kind::Split},
    {"left", Tactic::Kind::Left},
    {"right", Tactic::Kind::Right},
    {"apply", Tactic::Kind::Apply},
    {"destruct", Tactic::Kind::Destruct},
    {"exfalso", Tactic::Kind::Exfalso},
    {"contradiction", Tactic::Kind::Contradiction},
}};

[[noreturn]] void fail(const Token& t, const std::string& message) {
  throw ParseError(t.offset, t.end(), message);
}

class SentenceParser {
 public:
  explicit SentenceParser(std::string_view src) : sc_(src) {}

  Vernac parse() {
    const Token head = sc_.next();
    if (head.kind != TokenKind::Ident) fail(head, "expected a command but found " + describe(head));

    Vernac result;
    if (head.text == "Lemma") {
      auto name = name_after("Lemma");
      result = vernac::Lemma{std::move(name), statement()};
    } else if (head.text == "Parameter") {
      auto name = name_after("Parameter");
      result = vernac::Parameter{std::move(name), statement()};
    } else if (head.text == "Proof") {
      result = vernac::ProofMarker{};
    } else if (head.text == "Qed") {
      result = vernac::Qed{};
    } else if (head.text == "Check") {
      result = vernac::Check{name_after("Check")};
    } else if (head.text == "Require") {
      const Token imp = sc_.next();
      if (imp.kind != TokenKind::Ident || imp.text != "Import")
        fail(imp, "expected 'Import' after 'Require'");
      const Token path = sc_.next();
      if (path.kind != TokenKind::Ident || is_reserved(path.text))
        fail(path, "expected a module name but found " + describe(path));
      result = vernac::RequireImport{split_dotted(path.text)};
    } else if (auto kind = tactic_kind(head.text)) {
      result = vernac::RunTactic{tactic(*kind, head)};
    } else {
      fail(head, "unknown command " + describe(head));
    }

    const Token dot = sc_.next();
    if (dot.kind != TokenKind::Dot) fail(dot, "expected '.' but found " + describe(dot));
    const Token& rest = sc_.peek();
    if (rest.kind != TokenKind::End) fail(rest, "unexpected " + describe(rest) + " after end of sentence");
    return result;
  }

 private:
  static std::optional<Tactic::Kind> tactic_kind(std::string_view word) {
    for (const auto& [name, kind] : kTactics)
      if (name == word) return kind;
    return std::nullopt;
  }

  std::string plain_ident(const Token& t, std::string_view context) {
    if (t.kind != TokenKind::Ident || !is_identifier(t.text))
      fail(t, "expected an identifier " + std::string(context) + " but found " + describe(t));
    if (is_reserved(t.text)) fail(t, "reserved word " + describe(t) + " cannot be used as a name");
    return std::string(t.text);
  }

  std::string name_after(std::string_view keyword) {
    return plain_ident(sc_.next(), "after '" + std::string(keyword) + "'");
  }

  Prop statement() {
    const Token colon = sc_.next();
    if (colon.kind != TokenKind::Colon) fail(colon, "expected ':' but found " + describe(colon));
    return detail::parse_prop_tokens(sc_);
  }

  Tactic tactic(Tactic::Kind kind, const Token& head) {
    Tactic t{kind, {}};
    switch (kind) {
      case Tactic::Kind::Intro:
        if (sc_.peek().kind == TokenKind::Ident) t.arg = plain_ident(sc_.next(), "after 'intro'");
        break;
      case Tactic::Kind::Exact: {
        const Token arg = sc_.next();
        if (arg.kind == TokenKind::Ident && arg.text == "I")
          t.arg = "I";
        else
          t.arg = plain_ident(arg, "after 'exact'");
        break;
      }
      case Tactic::Kind::Apply:
      case Tactic::Kind::Destruct:
        t.arg = plain_ident(sc_.next(), "after '" + std::string(head.text) + "'");
        break;
      default:
        break;
    }
    return t;
  }

  Scanner sc_;
};

}  // namespace

std::string_view tactic_name(Tactic::Kind kind) noexcept {
  for (const auto& [name, k] : kTactics)
    if (k == kind) return name;
  return "?";
}

Vernac parse_vernac(std::string_view sentence) { return SentenceParser(sentence).parse(); }

}  // namespace proofdeck

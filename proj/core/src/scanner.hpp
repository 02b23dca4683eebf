#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace proofdeck::detail {

enum class TokenKind {
  Ident,     // possibly qualified: A.B.c
  Colon,
  LParen,
  RParen,
  Tilde,
  And,       // /\  (backslash)
  Or,        // \/  (backslash)
  Arrow,     // ->
  Dot,       // sentence terminator
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::size_t offset = 0;

  std::size_t end() const noexcept { return offset + text.size(); }
};

std::string describe(const Token& token);

/// Tokenizer shared by the formula and sentence parsers. Skips whitespace
/// and (nested) comments; throws ParseError on anything else it does not
/// recognize.
class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const noexcept { return current_; }
  Token next();
  std::string_view source() const noexcept { return src_; }

 private:
  void advance();
  void skip_trivia();

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

}  // namespace proofdeck::detail

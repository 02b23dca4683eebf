#include "scanner.hpp"

#include "proofdeck/common.hpp"

namespace proofdeck::detail {
namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ident_start(char c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) noexcept {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

}  // namespace

std::string describe(const Token& token) {
  if (token.kind == TokenKind::End) return "end of input";
  return "'" + std::string(token.text) + "'";
}

Token Scanner::next() {
  Token t = current_;
  advance();
  return t;
}

void Scanner::skip_trivia() {
  while (pos_ < src_.size()) {
    if (is_space(src_[pos_])) {
      ++pos_;
      continue;
    }
    if (src_.compare(pos_, 2, "(*") != 0) return;
    const std::size_t open = pos_;
    int depth = 1;
    pos_ += 2;
    while (depth > 0) {
      if (pos_ >= src_.size()) throw ParseError(open, open + 2, "unterminated comment");
      if (src_.compare(pos_, 2, "(*") == 0) {
        ++depth;
        pos_ += 2;
      } else if (src_.compare(pos_, 2, "*)") == 0) {
        --depth;
        pos_ += 2;
      } else {
        ++pos_;
      }
    }
  }
}

void Scanner::advance() {
  skip_trivia();
  const std::size_t start = pos_;
  auto make = [&](TokenKind kind, std::size_t len) {
    pos_ = start + len;
    current_ = Token{kind, src_.substr(start, len), start};
  };
  if (start >= src_.size()) {
    current_ = Token{TokenKind::End, {}, start};
    return;
  }
  const char c = src_[start];
  if (is_ident_start(c)) {
    std::size_t i = start;
    while (true) {
      while (i < src_.size() && is_ident_char(src_[i])) ++i;
      // A dot glued to a following identifier qualifies the name.
      if (i + 1 < src_.size() && src_[i] == '.' && is_ident_start(src_[i + 1])) {
        i += 1;
        continue;
      }
      break;
    }
    make(TokenKind::Ident, i - start);
    return;
  }
  auto at = [&](std::string_view s) { return src_.compare(start, s.size(), s) == 0; };
  if (at("/\\")) return make(TokenKind::And, 2);
  if (at("\\/")) return make(TokenKind::Or, 2);
  if (at("->")) return make(TokenKind::Arrow, 2);
  switch (c) {
    case ':': return make(TokenKind::Colon, 1);
    case '(': return make(TokenKind::LParen, 1);
    case ')': return make(TokenKind::RParen, 1);
    case '~': return make(TokenKind::Tilde, 1);
    case '.': return make(TokenKind::Dot, 1);
    default: break;
  }
  // Report the whole UTF-8 sequence so the location stays on a codepoint.
  std::size_t len = 1;
  while (start + len < src_.size() && (static_cast<unsigned char>(src_[start + len]) & 0xC0) == 0x80)
    ++len;
  throw ParseError(start, start + len, "unexpected character '" + std::string(src_.substr(start, len)) + "'");
}

}  // namespace proofdeck::detail

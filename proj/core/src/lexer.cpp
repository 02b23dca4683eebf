#include "proofdeck/lexer.hpp"

#include <algorithm>
#include <optional>

namespace proofdeck {
namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class Mode { Normal, Comment, String };

struct LexState {
  Mode mode = Mode::Normal;
  int depth = 0;                 // comment nesting, >= 1 in Comment mode
  std::size_t construct = 0;     // where the open comment/string began
  std::size_t sentence_start = kNone;
};

struct ScanResult {
  Layout layout;
  std::size_t remainder = 0;
  std::optional<LexError> error;
};

ScanResult scan(std::string_view src) {
  ScanResult out;
  LexState st;
  std::size_t i = 0;
  const std::size_t n = src.size();

  while (i < n) {
    const char c = src[i];
    switch (st.mode) {
      case Mode::Comment:
        if (c == '(' && i + 1 < n && src[i + 1] == '*') {
          ++st.depth;
          i += 2;
        } else if (c == '*' && i + 1 < n && src[i + 1] == ')') {
          i += 2;
          if (--st.depth == 0) {
            st.mode = Mode::Normal;
            if (st.sentence_start == kNone) out.layout.gap_comments.push_back({st.construct, i});
          }
        } else {
          ++i;
        }
        break;

      case Mode::String:
        if (c == '"') {
          if (i + 1 < n && src[i + 1] == '"') {
            i += 2;
          } else {
            st.mode = Mode::Normal;
            ++i;
          }
        } else {
          ++i;
        }
        break;

      case Mode::Normal:
        if (c == '(' && i + 1 < n && src[i + 1] == '*') {
          st.mode = Mode::Comment;
          st.depth = 1;
          st.construct = i;
          i += 2;
        } else if (c == '"') {
          if (st.sentence_start == kNone) st.sentence_start = i;
          st.mode = Mode::String;
          st.construct = i;
          ++i;
        } else if (is_space(c)) {
          ++i;
        } else {
          if (st.sentence_start == kNone) st.sentence_start = i;
          ++i;
          if (c == '.' && (i == n || is_space(src[i]))) {
            const std::size_t start = st.sentence_start;
            out.layout.sentences.push_back({std::string(src.substr(start, i - start)), start, i});
            out.remainder = i;
            st.sentence_start = kNone;
          }
        }
        break;
    }
  }

  switch (st.mode) {
    case Mode::Comment:
      out.error.emplace(st.construct, st.construct + 2, "unterminated comment");
      break;
    case Mode::String:
      out.error.emplace(st.construct, st.construct + 1, "unterminated string");
      break;
    case Mode::Normal:
      if (st.sentence_start != kNone) out.error.emplace(st.sentence_start, n, "unterminated sentence");
      break;
  }
  return out;
}

}  // namespace

Layout layout(std::string_view src) {
  ScanResult r = scan(src);
  if (r.error) throw *r.error;
  return std::move(r.layout);
}

std::vector<Sentence> split(std::string_view src) { return layout(src).sentences; }

PrefixSplit split_prefix(std::string_view src) {
  ScanResult r = scan(src);
  return {std::move(r.layout.sentences), r.remainder};
}

std::size_t invalidate_from(std::span<const Sentence> sentences, std::size_t edit_offset) {
  auto it = std::partition_point(sentences.begin(), sentences.end(),
                                 [&](const Sentence& s) { return s.end < edit_offset; });
  return static_cast<std::size_t>(it - sentences.begin());
}

}  // namespace proofdeck

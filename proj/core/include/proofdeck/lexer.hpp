#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proofdeck/common.hpp"

namespace proofdeck {

/// One terminated sentence. `text` is `src[start, end)` and ends in the dot.
struct Sentence {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

/// Sentences plus the comments found between them.
struct Layout {
  std::vector<Sentence> sentences;
  std::vector<Span> gap_comments;
};

/// Splits a script into sentences. A sentence ends at a `.` followed by
/// whitespace or end of input, outside comments and string literals.
/// Comments `(* *)` nest; inside strings `""` is an escaped quote.
/// Throws LexError for an unterminated comment, string or sentence.
std::vector<Sentence> split(std::string_view src);

/// Like split, but also reports the comments lying between sentences.
Layout layout(std::string_view src);

struct PrefixSplit {
  std::vector<Sentence> sentences;
  /// Offset just past the last complete sentence; `src.substr(remainder)`
  /// is the text still waiting for a terminator.
  std::size_t remainder = 0;
};

/// Never throws: returns the complete sentences and where the rest begins.
PrefixSplit split_prefix(std::string_view src);

/// Index of the first sentence whose span ends at or after `edit_offset`.
std::size_t invalidate_from(std::span<const Sentence> sentences, std::size_t edit_offset);

}  // namespace proofdeck

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace proofdeck::udoc {

class UdocError : public std::runtime_error {
 public:
  UdocError(std::size_t offset, const std::string& message)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct Inline {
  enum class Kind { Text, Code };
  Kind kind = Kind::Text;
  std::string text;
  friend bool operator==(const Inline&, const Inline&) = default;
};

struct Block {
  enum class Kind { Heading, Paragraph };
  Kind kind = Kind::Paragraph;
  int level = 0;  // headings only
  std::vector<Inline> content;
  friend bool operator==(const Block&, const Block&) = default;
};

struct Prose {
  std::vector<Block> blocks;
  friend bool operator==(const Prose&, const Prose&) = default;
};

struct Code {
  std::string text;
  bool editable = true;
  std::string element_id;
  friend bool operator==(const Code&, const Code&) = default;
};

using DocChunk = std::variant<Prose, Code>;

/// Splits a literate script into prose and code.
///
/// Supported markup inside `(** ... *)`:
///   `* Title` heading level 1, `** Title` heading level 2,
///   blank lines separate paragraphs, `[expr]` is inline code.
/// Code between `(* begin static *)` and `(* end static *)` is read-only.
/// Code chunks get ids `pd-snippet-0`, `pd-snippet-1`, ... in order.
/// Throws LexError from the lexer, or UdocError for unbalanced directives.
std::vector<DocChunk> chunk(std::string_view src);

/// Executable content of the chunks: code chunk texts joined by newlines.
std::string extract_script(std::span<const DocChunk> chunks);

struct HtmlOptions {
  std::string title = "proofdeck document";
  /// Asset root handed to the loader, as in `loadProofDeck('./')`.
  std::string loader = "./";
  /// When set, this script body is inlined instead of referencing
  /// `<loader>js/proofdeck-loader.js`.
  std::optional<std::string> inline_loader;
};

std::string emit_html(std::span<const DocChunk> chunks, const HtmlOptions& options);

std::string escape_html(std::string_view text);

}  // namespace proofdeck::udoc

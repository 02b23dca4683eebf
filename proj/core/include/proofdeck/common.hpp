#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proofdeck {

/// A dotted module or package path such as `Lib.Base`, stored segment-wise.
using LogicalPath = std::vector<std::string>;

std::string dotted(const LogicalPath& path);
LogicalPath split_dotted(std::string_view text);

/// Error tied to a byte range of some source text.
class SourceError : public std::runtime_error {
 public:
  SourceError(std::size_t offset, std::size_t end, const std::string& message)
      : std::runtime_error(message), offset_(offset), end_(end) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t end() const noexcept { return end_; }

 private:
  std::size_t offset_;
  std::size_t end_;
};

class ParseError : public SourceError {
 public:
  using SourceError::SourceError;
};

class LexError : public SourceError {
 public:
  using SourceError::SourceError;
};

/// Raised by the kernel when a well-formed sentence cannot be executed.
class ExecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace proofdeck

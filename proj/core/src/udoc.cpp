#include "proofdeck/udoc.hpp"

#include "proofdeck/lexer.hpp"

namespace proofdeck::udoc {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<Inline> inlines(std::string_view text) {
  std::vector<Inline> out;
  auto push = [&](Inline::Kind kind, std::string_view s) {
    if (s.empty()) return;
    if (!out.empty() && out.back().kind == kind && kind == Inline::Kind::Text)
      out.back().text += s;
    else
      out.push_back({kind, std::string(s)});
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const auto open = text.find('[', i);
    if (open == std::string_view::npos) break;
    // Brackets nest inside inline code, e.g. [f [x]].
    int depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t j = open; j < text.size(); ++j) {
      if (text[j] == '[') ++depth;
      else if (text[j] == ']' && --depth == 0) {
        close = j;
        break;
      }
    }
    if (close == std::string_view::npos) break;
    push(Inline::Kind::Text, text.substr(i, open - i));
    push(Inline::Kind::Code, text.substr(open + 1, close - open - 1));
    i = close + 1;
  }
  push(Inline::Kind::Text, text.substr(i));
  return out;
}

Prose parse_doc(std::string_view body) {
  Prose prose;
  std::string para;
  auto flush = [&] {
    if (!para.empty()) prose.blocks.push_back({Block::Kind::Paragraph, 0, inlines(para)});
    para.clear();
  };
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto nl = body.find('\n', pos);
    if (nl == std::string_view::npos) nl = body.size();
    const auto line = trim(body.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) {
      flush();
    } else if (line.starts_with("** ")) {
      flush();
      prose.blocks.push_back({Block::Kind::Heading, 2, inlines(trim(line.substr(3)))});
    } else if (line.starts_with("* ")) {
      flush();
      prose.blocks.push_back({Block::Kind::Heading, 1, inlines(trim(line.substr(2)))});
    } else {
      if (!para.empty()) para += ' ';
      para += line;
    }
  }
  flush();
  return prose;
}

}  // namespace

std::vector<DocChunk> chunk(std::string_view src) {
  const Layout lay = layout(src);
  std::vector<DocChunk> out;
  std::size_t next_id = 0;
  std::size_t cursor = 0;
  bool in_static = false;
  std::size_t static_open = 0;

  auto flush_code = [&](std::size_t from, std::size_t to) {
    const auto text = trim(src.substr(from, to - from));
    if (text.empty()) return;
    out.push_back(Code{std::string(text), !in_static, "pd-snippet-" + std::to_string(next_id++)});
  };

  for (const auto& c : lay.gap_comments) {
    const auto whole = src.substr(c.start, c.end - c.start);
    const bool doc = whole.size() >= 5 && whole[2] == '*';
    const auto inner = trim(whole.substr(2, whole.size() - 4));
    const bool begin = !doc && inner == "begin static";
    const bool end = !doc && inner == "end static";
    if (!doc && !begin && !end) continue;

    flush_code(cursor, c.start);
    cursor = c.end;
    if (doc) {
      Prose p = parse_doc(whole.substr(3, whole.size() - 5));
      if (!out.empty() && std::holds_alternative<Prose>(out.back())) {
        auto& blocks = std::get<Prose>(out.back()).blocks;
        blocks.insert(blocks.end(), p.blocks.begin(), p.blocks.end());
      } else {
        out.push_back(std::move(p));
      }
    } else if (begin) {
      if (in_static) throw UdocError(c.start, "nested begin static");
      in_static = true;
      static_open = c.start;
    } else {
      if (!in_static) throw UdocError(c.start, "end static without begin static");
      in_static = false;
    }
  }
  flush_code(cursor, src.size());
  if (in_static) throw UdocError(static_open, "begin static without end static");
  return out;
}

std::string extract_script(std::span<const DocChunk> chunks) {
  std::string out;
  for (const auto& c : chunks) {
    if (const auto* code = std::get_if<Code>(&c)) {
      if (!out.empty()) out += '\n';
      out += code->text;
    }
  }
  return out;
}

}  // namespace proofdeck::udoc

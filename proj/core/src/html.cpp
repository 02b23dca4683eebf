#include "proofdeck/udoc.hpp"

namespace proofdeck::udoc {
namespace {

constexpr std::string_view kStyle = R"(body { max-width: 50em; margin: 2em auto; font-family: sans-serif; line-height: 1.5; }
#pd-document textarea, pre.pd-static { display: block; width: 100%; font-family: monospace; }
)";

std::string js_string(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '<': out += "\\x3c"; break;
      default: out += c;
    }
  }
  return out + "'";
}

void emit_inlines(const std::vector<Inline>& content, std::string& out) {
  for (const auto& piece : content) {
    if (piece.kind == Inline::Kind::Code)
      out += "<code>" + escape_html(piece.text) + "</code>";
    else
      out += escape_html(piece.text);
  }
}

}  // namespace

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string emit_html(std::span<const DocChunk> chunks, const HtmlOptions& options) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n";
  out += "<title>" + escape_html(options.title) + "</title>\n";
  out += "<style>\n" + std::string(kStyle) + "</style>\n";
  out += "</head>\n<body>\n<div id=\"pd-document\">\n";

  std::vector<std::string> ids;
  for (const auto& c : chunks) {
    if (const auto* prose = std::get_if<Prose>(&c)) {
      for (const auto& b : prose->blocks) {
        const std::string tag = b.kind == Block::Kind::Heading ? "h" + std::to_string(b.level) : "p";
        out += "<" + tag + ">";
        emit_inlines(b.content, out);
        out += "</" + tag + ">\n";
      }
      continue;
    }
    const auto& code = std::get<Code>(c);
    ids.push_back(code.element_id);
    if (code.editable) {
      out += "<textarea id=\"" + code.element_id + "\">" + escape_html(code.text) + "</textarea>\n";
    } else {
      out += "<pre class=\"pd-static\"><code id=\"" + code.element_id + "\">" + escape_html(code.text) +
             "</code></pre>\n";
    }
  }
  out += "</div>\n";

  if (options.inline_loader) {
    out += "<script type=\"text/javascript\">\n" + *options.inline_loader;
    if (!options.inline_loader->empty() && options.inline_loader->back() != '\n') out += '\n';
    out += "</script>\n";
  } else {
    out += "<script src=\"" + escape_html(options.loader) +
           "js/proofdeck-loader.js\" type=\"text/javascript\"></script>\n";
  }
  out += "<script type=\"text/javascript\">\n  loadProofDeck(" + js_string(options.loader) +
         ").then( () => new ProofDeckManager ([";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + std::string("\"") + ids[i] + "\"";
  out += "], {}));\n</script>\n</body>\n</html>\n";
  return out;
}

}  // namespace proofdeck::udoc

#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "proofdeck/kernel.hpp"
#include "proofdeck/lexer.hpp"
#include "proofdeck/udoc.hpp"

namespace proofdeck::udoc {
namespace {

Inline text(std::string s) { return {Inline::Kind::Text, std::move(s)}; }
Inline code(std::string s) { return {Inline::Kind::Code, std::move(s)}; }

TEST(Chunk, IntroExample) {
  const auto cs = chunk("(** * Intro *)\nLemma t : True.\nProof. exact I. Qed.");
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0], DocChunk{(Prose{{{Block::Kind::Heading, 1, {text("Intro")}}}})});
  EXPECT_EQ(cs[1], DocChunk{(Code{"Lemma t : True.\nProof. exact I. Qed.", true, "pd-snippet-0"})});
  EXPECT_EQ(split(std::get<Code>(cs[1]).text).size(), 4u);
}

TEST(Chunk, StaticRegion) {
  const auto cs = chunk("(* begin static *) Parameter A : True. (* end static *)");
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0], DocChunk{(Code{"Parameter A : True.", false, "pd-snippet-0"})});
}

TEST(Chunk, PlainCommentStaysInCode) {
  const auto cs = chunk("Check t. (* note *)\nCheck u.");
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(std::get<Code>(cs[0]).text, "Check t. (* note *)\nCheck u.");
}

TEST(Chunk, ProseMarkup) {
  const auto cs = chunk("(** * Title\n\nfirst line\nsecond [x] line\n\n** Sub [a [b]]\nlast *)");
  ASSERT_EQ(cs.size(), 1u);
  const auto& blocks = std::get<Prose>(cs[0]).blocks;
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[0], (Block{Block::Kind::Heading, 1, {text("Title")}}));
  EXPECT_EQ(blocks[1], (Block{Block::Kind::Paragraph, 0, {text("first line second "), code("x"), text(" line")}}));
  EXPECT_EQ(blocks[2], (Block{Block::Kind::Heading, 2, {text("Sub "), code("a [b]")}}));
  EXPECT_EQ(blocks[3], (Block{Block::Kind::Paragraph, 0, {text("last")}}));
}

TEST(Chunk, Errors) {
  auto offset = [](std::string_view src) -> long {
    try {
      chunk(src);
    } catch (const UdocError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset("(* begin static *) x. (* begin static *)"), 22);
  EXPECT_EQ(offset("x. (* end static *)"), 3);
  EXPECT_EQ(offset("x. (* begin static *) y."), 3);
  EXPECT_THROW(chunk("(** unterminated"), LexError);
}

TEST(Chunk, IdsAreSequential) {
  const auto cs = chunk("a. (** p *) b. (* begin static *) c. (* end static *) d.");
  std::vector<std::string> ids;
  for (const auto& c : cs)
    if (const auto* k = std::get_if<Code>(&c)) ids.push_back(k->element_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"pd-snippet-0", "pd-snippet-1", "pd-snippet-2", "pd-snippet-3"}));
}

TEST(Html, OneEditableChunk) {
  const std::vector<DocChunk> cs{Code{"exact I.", true, "pd-snippet-0"}};
  const auto html = emit_html(cs, {});
  EXPECT_NE(html.find("<textarea id=\"pd-snippet-0\">"), std::string::npos);
  EXPECT_NE(html.find("new ProofDeckManager ([\"pd-snippet-0\"], {})"), std::string::npos);
  EXPECT_NE(html.find("loadProofDeck('./')"), std::string::npos);
  EXPECT_NE(html.find("<script src=\"./js/proofdeck-loader.js\""), std::string::npos);
}

TEST(Html, StaticCodeUsesCodeTag) {
  const std::vector<DocChunk> cs{Code{"Parameter a : A.", false, "pd-snippet-0"}};
  const auto html = emit_html(cs, {});
  EXPECT_NE(html.find("<code id=\"pd-snippet-0\">Parameter a : A.</code>"), std::string::npos);
  EXPECT_EQ(html.find("<textarea"), std::string::npos);
}

TEST(Html, ZeroChunks) {
  const auto html = emit_html({}, {});
  EXPECT_NE(html.find("new ProofDeckManager ([], {})"), std::string::npos);
  EXPECT_EQ(html.rfind("<!DOCTYPE html>", 0), 0u);
}

TEST(Html, Escaping) {
  EXPECT_EQ(escape_html("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
  const std::vector<DocChunk> cs{Code{"A -> \"x\" & <", true, "pd-snippet-0"}};
  EXPECT_NE(emit_html(cs, {}).find(">A -&gt; &quot;x&quot; &amp; &lt;</textarea>"), std::string::npos);
  HtmlOptions o;
  o.loader = "a'b/";
  EXPECT_NE(emit_html({}, o).find("loadProofDeck('a\\'b/')"), std::string::npos);
}

TEST(Html, InlineLoader) {
  HtmlOptions o;
  o.inline_loader = "function loadProofDeck() {}";
  const auto html = emit_html({}, o);
  EXPECT_NE(html.find("function loadProofDeck() {}\n</script>"), std::string::npos);
  EXPECT_EQ(html.find("js/proofdeck-loader.js"), std::string::npos);
}

// Tag balance over the subset of HTML we emit: every open tag closes in
// order, void elements excepted.
bool well_formed(const std::string& html) {
  static const std::regex tag("<(/?)([a-zA-Z0-9]+)[^>]*?(/?)>");
  std::vector<std::string> stack;
  for (auto it = std::sregex_iterator(html.begin(), html.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::string name = m[2];
    if (name == "DOCTYPE" || m[3] == "/") continue;
    if (m[1] == "/") {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, MatchesFrozenHtml) {
  const auto dir = fixtures::dir() / "udoc";
  const std::string src = fixtures::read(dir / (GetParam() + ".v"));
  const auto cs = chunk(src);
  HtmlOptions o;
  o.title = GetParam();
  const std::string html = emit_html(cs, o);
  EXPECT_EQ(html, fixtures::read(dir / (GetParam() + ".html")));
  EXPECT_TRUE(well_formed(html));

  // id list agreement
  std::string ids;
  for (const auto& c : cs)
    if (const auto* k = std::get_if<Code>(&c)) ids += (ids.empty() ? "\"" : ", \"") + k->element_id + "\"";
  EXPECT_NE(html.find("new ProofDeckManager ([" + ids + "], {})"), std::string::npos);

  // code preservation: the extracted script runs like the source
  auto run = [](std::string_view s) {
    ProofEnv env;
    std::optional<ProofState> ps;
    std::vector<std::string> texts;
    for (const auto& sent : split(s)) {
      auto r = exec_vernac(env, ps, parse_vernac(sent.text));
      env = r.env;
      ps = r.proof;
      texts.push_back(sent.text);
    }
    EXPECT_FALSE(ps);
    return std::pair{env, texts};
  };
  const auto a = run(src);
  const auto b = run(extract_script(cs));
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

INSTANTIATE_TEST_SUITE_P(Udoc, Golden, ::testing::Values("intro", "static", "logic"));

}  // namespace
}  // namespace proofdeck::udoc

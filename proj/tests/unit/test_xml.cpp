#include <gtest/gtest.h>

#include <random>
#include <string>

#include "semsense/xml.hpp"

using namespace semsense;

TEST(XmlParse, ElementsAttributesText) {
  const auto root = xml::parse(R"(<?xml version="1.0"?>
<!-- leading comment -->
<a x="1" y='two'>
  <b>hello &amp; &lt;bye&gt; &#65;&#x42;</b>
  <c z="&quot;q&quot;"/>
</a>
)");
  EXPECT_EQ(root.name, "a");
  ASSERT_NE(root.attribute("y"), nullptr);
  EXPECT_EQ(*root.attribute("y"), "two");
  ASSERT_EQ(root.children.size(), 2u);
  EXPECT_EQ(root.children[0].text, "hello & <bye> AB");
  EXPECT_EQ(*root.children[1].attribute("z"), "\"q\"");
  EXPECT_EQ(root.children[1].line, 5u);
  EXPECT_EQ(root.children[1].column, 3u);
}

TEST(XmlParse, CdataAndNamespacedNames) {
  const auto root = xml::parse("<swe:value rdf:datatype=\"xsd:double\"><![CDATA[1<2]]></swe:value>");
  EXPECT_EQ(root.name, "swe:value");
  EXPECT_EQ(root.text, "1<2");
}

namespace {

ParseError parse_error(const std::string& doc) {
  try {
    xml::parse(doc);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << doc;
  return ParseError("none", 0, 0);
}

}  // namespace

TEST(XmlParse, EmptyDocument) {
  const auto e = parse_error("");
  EXPECT_NE(std::string(e.what()).find("no root element"), std::string::npos);
  EXPECT_EQ(e.line(), 1u);
}

TEST(XmlParse, ErrorPositions) {
  const auto mismatched = parse_error("<a>\n  <b></c>\n</a>");
  EXPECT_EQ(mismatched.line(), 2u);
  EXPECT_NE(std::string(mismatched.what()).find("mismatched"), std::string::npos);

  const auto unquoted = parse_error("<a name=AirTemperature\"/>");
  EXPECT_EQ(unquoted.line(), 1u);
  EXPECT_EQ(unquoted.column(), 9u);

  EXPECT_NE(std::string(parse_error("<a/><b/>").what()).find("more than one root"), std::string::npos);
  EXPECT_NE(std::string(parse_error("<a>&xsd;</a>").what()).find("undefined entity"), std::string::npos);
  EXPECT_NE(std::string(parse_error("<a x=\"1\" x=\"2\"/>").what()).find("duplicate attribute"), std::string::npos);
  EXPECT_NE(std::string(parse_error("<a x=\"1\"y=\"2\"/>").what()).find("whitespace"), std::string::npos);
  EXPECT_NE(std::string(parse_error("<a>").what()).find("unterminated"), std::string::npos);
  parse_error("<a><!-- never closed </a>");
  parse_error("text only");
}

TEST(XmlSerialize, CanonicalLayout) {
  auto root = xml::make_element("r");
  root.attr("k", "a\"b&c");
  root.add(xml::make_element("leaf", "x<y"));
  root.add(xml::make_element("empty")).attr("e", "1");
  auto& mid = root.add(xml::make_element("mid"));
  mid.add(xml::make_element("deep", "t"));
  EXPECT_EQ(xml::serialize(root),
            "<r k=\"a&quot;b&amp;c\">\n"
            "  <leaf>x&lt;y</leaf>\n"
            "  <empty e=\"1\"/>\n"
            "  <mid>\n"
            "    <deep>t</deep>\n"
            "  </mid>\n"
            "</r>\n");
  EXPECT_EQ(xml::serialize(xml::make_element("a"), "<?xml version=\"1.0\"?>\n"), "<?xml version=\"1.0\"?>\n<a/>\n");
}

namespace {

xml::Element random_tree(std::mt19937_64& rng, int depth) {
  static const char* kNames[] = {"a", "swe:field", "rdf:RDF", "x-y", "_z.1"};
  static const char* kValues[] = {"", "plain", "a&b", "<tag>", "quote\"s", "tab\there", "urn:ogc:def"};
  auto el = xml::make_element(kNames[rng() % 5]);
  const auto attrs = rng() % 3;
  for (std::size_t i = 0; i < attrs; ++i) el.attr("k" + std::to_string(i), kValues[rng() % 7]);
  if (depth > 0 && rng() % 2 == 0) {
    const auto kids = 1 + rng() % 3;
    for (std::size_t i = 0; i < kids; ++i) el.add(random_tree(rng, depth - 1));
  } else {
    el.text = kValues[1 + rng() % 6];
  }
  return el;
}

bool same_tree(const xml::Element& a, const xml::Element& b) {
  if (a.name != b.name || a.attributes != b.attributes || a.children.size() != b.children.size()) return false;
  if (a.children.empty() && a.text != b.text) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_tree(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace

TEST(XmlSerialize, ParseOfSerializeIsIdentityProperty) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto tree = random_tree(rng, 4);
    const auto text = xml::serialize(tree);
    const auto back = xml::parse(text);
    ASSERT_TRUE(same_tree(tree, back)) << text;
    ASSERT_EQ(xml::serialize(back), text);
  }
}

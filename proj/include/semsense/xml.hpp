#pragma once

// Minimal XML 1.0 reader and canonical writer. Supports elements, attributes,
// character data, CDATA, comments, processing instructions, the five predefined
// entities and character references. No DTD processing; namespaces are kept as
// literal "prefix:local" names.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsense/errors.hpp"

namespace semsense::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated direct character data
  std::size_t line = 0;
  std::size_t column = 0;

  [[nodiscard]] const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  Element& attr(std::string key, std::string value) {
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  Element& add(Element child) {
    children.push_back(std::move(child));
    return children.back();
  }
};

inline Element make_element(std::string name, std::string text = {}) {
  Element e;
  e.name = std::move(name);
  e.text = std::move(text);
  return e;
}

namespace detail {

inline bool is_name_start(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

inline bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Element parse_document() {
    skip_misc(true);
    if (at_end()) fail("no root element");
    if (peek() != '<') fail("content outside root element");
    Element root = parse_element();
    skip_misc(false);
    if (!at_end()) fail(peek() == '<' ? "more than one root element" : "content after root element");
    return root;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }
  [[nodiscard]] char peek() const { return src_[pos_]; }
  [[nodiscard]] bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void expect(std::string_view s) {
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
    advance(s.size());
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) advance();
  }

  // Whitespace, comments and PIs around the root. The prolog may also hold a
  // DOCTYPE without an internal subset.
  void skip_misc(bool prolog) {
    while (true) {
      skip_space();
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<?")) {
        skip_pi();
      } else if (prolog && starts_with("<!DOCTYPE")) {
        while (!at_end() && peek() != '>') {
          if (peek() == '[') fail("DTD internal subsets are not supported");
          advance();
        }
        expect(">");
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    expect("<!--");
    while (!starts_with("-->")) {
      if (at_end()) fail("unterminated comment");
      advance();
    }
    advance(3);
  }

  void skip_pi() {
    expect("<?");
    while (!starts_with("?>")) {
      if (at_end()) fail("unterminated processing instruction");
      advance();
    }
    advance(2);
  }

  std::string parse_name() {
    if (at_end() || !is_name_start(static_cast<unsigned char>(peek()))) fail("expected a name");
    const auto start = pos_;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  void parse_reference(std::string& out) {
    expect("&");
    if (!at_end() && peek() == '#') {
      advance();
      int base = 10;
      if (!at_end() && peek() == 'x') {
        base = 16;
        advance();
      }
      std::uint32_t cp = 0;
      std::size_t digits = 0;
      while (!at_end() && peek() != ';') {
        const char c = peek();
        int d = -1;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        if (d < 0) fail("bad character reference");
        cp = cp * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail("character reference out of range");
        ++digits;
        advance();
      }
      if (digits == 0 || cp == 0) fail("bad character reference");
      expect(";");
      append_utf8(out, cp);
      return;
    }
    const auto name = parse_name();
    expect(";");
    if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else fail("undefined entity '&" + name + ";'");
  }

  std::string parse_attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    const char quote = peek();
    advance();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated attribute value");
      const char c = peek();
      if (c == quote) break;
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        parse_reference(value);
      } else {
        // attribute-value normalization of literal whitespace
        value += is_space(c) ? ' ' : c;
        advance();
      }
    }
    advance();
    return value;
  }

  Element parse_element() {
    Element el;
    el.line = line_;
    el.column = col_;
    expect("<");
    el.name = parse_name();
    while (true) {
      const bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!had_space) fail("attributes must be separated by whitespace");
      auto key = parse_name();
      skip_space();
      expect("=");
      skip_space();
      auto value = parse_attribute_value();
      if (el.attribute(key) != nullptr) fail("duplicate attribute '" + key + "'");
      el.attributes.emplace_back(std::move(key), std::move(value));
    }

    while (true) {
      if (at_end()) fail("unterminated element <" + el.name + ">");
      if (starts_with("</")) {
        advance(2);
        const auto closing = parse_name();
        if (closing != el.name) fail("mismatched end tag </" + closing + ">, expected </" + el.name + ">");
        skip_space();
        expect(">");
        return el;
      }
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<![CDATA[")) {
        advance(9);
        while (!starts_with("]]>")) {
          if (at_end()) fail("unterminated CDATA section");
          el.text += peek();
          advance();
        }
        advance(3);
      } else if (starts_with("<?")) {
        skip_pi();
      } else if (peek() == '<') {
        el.children.push_back(parse_element());
      } else if (peek() == '&') {
        parse_reference(el.text);
      } else {
        if (starts_with("]]>")) fail("']]>' in character data");
        el.text += peek();
        advance();
      }
    }
  }
};

inline void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) out += "&quot;";
        else out += c;
        break;
      case '\n':
        if (attribute) out += "&#10;";
        else out += c;
        break;
      case '\t':
        if (attribute) out += "&#9;";
        else out += c;
        break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

inline void write_element(std::string& out, const Element& el, std::size_t depth) {
  out.append(depth * 2, ' ');
  out += '<';
  out += el.name;
  for (const auto& [k, v] : el.attributes) {
    out += ' ';
    out += k;
    out += "=\"";
    escape_into(out, v, true);
    out += '"';
  }
  if (el.children.empty() && el.text.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  if (el.children.empty()) {
    escape_into(out, el.text, false);
  } else {
    for (const auto& child : el.children) {
      out += '\n';
      write_element(out, child, depth + 1);
    }
    out += '\n';
    out.append(depth * 2, ' ');
  }
  out += "</";
  out += el.name;
  out += '>';
}

}  // namespace detail

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline Element parse(std::string_view document) { return detail::Parser(document).parse_document(); }

// Canonical form: one element per line, two-space indent per nesting level,
// double-quoted attributes in insertion order, leaf text inline, trailing newline.
// Elements holding both text and children are written with children only.
inline std::string serialize(const Element& root, std::string_view prolog = {}) {
  std::string out(prolog);
  detail::write_element(out, root, 0);
  out += '\n';
  return out;
}

}  // namespace semsense::xml

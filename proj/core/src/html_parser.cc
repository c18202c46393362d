// Copyright 2026 The Erratum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTML tokenizer and tree builder.
//
// The tree builder follows the insertion rules of the HTML standard that
// matter for element structure: implied html/head/body, auto-closing of p,
// li, dd/dt, option and table sections, implicit tbody/tr, and scoped end
// tag matching. The adoption agency algorithm is approximated by popping to
// the matching formatting element, and foster parenting is not performed.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "erratum/dom.h"
#include "erratum/error.h"

namespace erratum {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals_prefix(std::string_view s, std::size_t pos, std::string_view p) {
  if (pos + p.size() > s.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (to_lower(s[pos + i]) != p[i]) return false;
  }
  return true;
}

void append_utf8(std::uint32_t cp, std::string& out) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
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

struct NamedEntity {
  std::string_view name;
  std::uint32_t code_point;
};

constexpr std::array<NamedEntity, 32> kEntities = {{
    {"amp", '&'},      {"lt", '<'},        {"gt", '>'},
    {"quot", '"'},     {"apos", '\''},     {"nbsp", 0xA0},
    {"copy", 0xA9},    {"reg", 0xAE},      {"trade", 0x2122},
    {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013},
    {"laquo", 0xAB},   {"raquo", 0xBB},    {"lsquo", 0x2018},
    {"rsquo", 0x2019}, {"ldquo", 0x201C},  {"rdquo", 0x201D},
    {"bull", 0x2022},  {"middot", 0xB7},   {"euro", 0x20AC},
    {"pound", 0xA3},   {"yen", 0xA5},      {"cent", 0xA2},
    {"times", 0xD7},   {"divide", 0xF7},   {"deg", 0xB0},
    {"para", 0xB6},    {"sect", 0xA7},     {"larr", 0x2190},
    {"rarr", 0x2192},  {"zwnj", 0x200C},
}};

// Decodes character references in `in`.
std::string decode_entities(std::string_view in) {
  if (in.find('&') == std::string_view::npos) return std::string(in);
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    char c = in[i];
    if (c != '&') {
      out += c;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (j < in.size() && in[j] == '#') {
      ++j;
      bool hex = j < in.size() && (in[j] == 'x' || in[j] == 'X');
      if (hex) ++j;
      std::uint32_t cp = 0;
      std::size_t digits = 0;
      while (j < in.size()) {
        char d = in[j];
        int v = -1;
        if (d >= '0' && d <= '9') v = d - '0';
        else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
        else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
        if (v < 0) break;
        if (cp < 0x110000) cp = cp * (hex ? 16 : 10) + v;
        ++digits;
        ++j;
      }
      if (digits == 0) {
        out += c;
        ++i;
        continue;
      }
      if (j < in.size() && in[j] == ';') ++j;
      append_utf8(cp, out);
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < in.size() && k - j < 10 &&
           (is_alpha(in[k]) || (in[k] >= '0' && in[k] <= '9'))) {
      ++k;
    }
    std::string_view name = in.substr(j, k - j);
    bool matched = false;
    for (const auto& e : kEntities) {
      if (e.name == name) {
        bool semicolon = k < in.size() && in[k] == ';';
        // Legacy references without a semicolon are only honored for the
        // five basic ones.
        if (!semicolon && !(name == "amp" || name == "lt" || name == "gt" ||
                            name == "quot" || name == "nbsp")) {
          break;
        }
        append_utf8(e.code_point, out);
        i = semicolon ? k + 1 : k;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += c;
      ++i;
    }
  }
  return out;
}

enum class TokenKind { kStartTag, kEndTag, kText, kEof };

struct Token {
  TokenKind kind = TokenKind::kEof;
  std::string name;
  std::vector<Attribute> attributes;
  bool self_closing = false;
  std::string text;
};

bool is_raw_text(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "xmp" ||
         tag == "iframe" || tag == "noembed" || tag == "noframes" ||
         tag == "noscript";
}

bool is_rcdata(std::string_view tag) {
  return tag == "textarea" || tag == "title";
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view input) : in_(input) {}

  Token next() {
    if (!pending_end_.empty()) {
      Token t;
      t.kind = TokenKind::kEndTag;
      t.name = std::move(pending_end_);
      pending_end_.clear();
      return t;
    }
    while (pos_ < in_.size()) {
      if (in_[pos_] != '<') return text_token();
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (starts_with("<!") || starts_with("<?")) {
        // Doctype, CDATA and processing instructions are all dropped.
        std::size_t end = in_.find('>', pos_);
        pos_ = end == std::string_view::npos ? in_.size() : end + 1;
        continue;
      }
      if (starts_with("</")) {
        if (pos_ + 2 < in_.size() && is_alpha(in_[pos_ + 2])) {
          return tag_token(/*end=*/true);
        }
        std::size_t end = in_.find('>', pos_);
        pos_ = end == std::string_view::npos ? in_.size() : end + 1;
        continue;
      }
      if (pos_ + 1 < in_.size() && is_alpha(in_[pos_ + 1])) {
        return tag_token(/*end=*/false);
      }
      return text_token();
    }
    return Token{};
  }

 private:
  bool starts_with(std::string_view p) const {
    return in_.substr(pos_, p.size()) == p;
  }

  void skip_comment() {
    std::size_t end = in_.find("-->", pos_ + 4);
    pos_ = end == std::string_view::npos ? in_.size() : end + 3;
  }

  Token text_token() {
    // A leading '<' that did not open a tag is literal text.
    std::size_t start = pos_;
    std::size_t end = in_.find('<', pos_ + 1);
    if (end == std::string_view::npos) end = in_.size();
    pos_ = end;
    Token t;
    t.kind = TokenKind::kText;
    t.text = decode_entities(in_.substr(start, end - start));
    return t;
  }

  Token tag_token(bool end) {
    pos_ += end ? 2 : 1;
    Token t;
    t.kind = end ? TokenKind::kEndTag : TokenKind::kStartTag;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' &&
           in_[pos_] != '>') {
      t.name += to_lower(in_[pos_++]);
    }
    parse_attributes(t);
    if (!end && (is_raw_text(t.name) || is_rcdata(t.name))) {
      read_raw_content(t.name, is_rcdata(t.name));
    }
    if (end) {
      t.attributes.clear();
      t.self_closing = false;
    }
    return t;
  }

  void parse_attributes(Token& t) {
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (is_space(c)) {
        ++pos_;
        continue;
      }
      if (c == '>') {
        ++pos_;
        return;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '>') {
          t.self_closing = true;
          ++pos_;
          return;
        }
        continue;
      }
      std::string name;
      name += to_lower(c);
      ++pos_;
      while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' &&
             in_[pos_] != '>' && in_[pos_] != '=') {
        name += to_lower(in_[pos_++]);
      }
      while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
      std::string value;
      if (pos_ < in_.size() && in_[pos_] == '=') {
        ++pos_;
        while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
        if (pos_ < in_.size() && (in_[pos_] == '"' || in_[pos_] == '\'')) {
          char quote = in_[pos_++];
          std::size_t close = in_.find(quote, pos_);
          if (close == std::string_view::npos) close = in_.size();
          value = decode_entities(in_.substr(pos_, close - pos_));
          pos_ = std::min(close + 1, in_.size());
        } else {
          std::size_t start = pos_;
          while (pos_ < in_.size() && !is_space(in_[pos_]) &&
                 in_[pos_] != '>') {
            ++pos_;
          }
          value = decode_entities(in_.substr(start, pos_ - start));
        }
      }
      bool duplicate = std::any_of(
          t.attributes.begin(), t.attributes.end(),
          [&](const Attribute& a) { return a.name == name; });
      if (!duplicate) t.attributes.push_back({std::move(name), std::move(value)});
    }
  }

  // Consumes everything up to the matching end tag; emits it as one text
  // token followed by the end tag.
  void read_raw_content(const std::string& name, bool decode) {
    std::size_t search = pos_;
    std::size_t end = in_.size();
    while (true) {
      std::size_t lt = in_.find("</", search);
      if (lt == std::string_view::npos) break;
      if (iequals_prefix(in_, lt + 2, name)) {
        std::size_t after = lt + 2 + name.size();
        if (after >= in_.size() || is_space(in_[after]) || in_[after] == '>' ||
            in_[after] == '/') {
          end = lt;
          break;
        }
      }
      search = lt + 2;
    }
    std::string_view body = in_.substr(pos_, end - pos_);
    raw_text_ = decode ? decode_entities(body) : std::string(body);
    has_raw_ = true;
    if (end < in_.size()) {
      std::size_t close = in_.find('>', end);
      pos_ = close == std::string_view::npos ? in_.size() : close + 1;
    } else {
      pos_ = in_.size();
    }
    pending_end_ = name;
  }

 public:
  // Raw content captured for the last raw-text start tag, if any.
  bool take_raw(std::string& out) {
    if (!has_raw_) return false;
    out = std::move(raw_text_);
    raw_text_.clear();
    has_raw_ = false;
    return true;
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
  std::string pending_end_;
  std::string raw_text_;
  bool has_raw_ = false;
};

bool in_list(std::string_view tag, std::initializer_list<std::string_view> l) {
  return std::find(l.begin(), l.end(), tag) != l.end();
}

bool closes_paragraph(std::string_view t) {
  return in_list(t, {"address", "article", "aside", "blockquote", "center",
                     "details", "dialog", "dir", "div", "dl", "fieldset",
                     "figcaption", "figure", "footer", "form", "header",
                     "hgroup", "main", "menu", "nav", "ol", "p", "section",
                     "summary", "ul", "h1", "h2", "h3", "h4", "h5", "h6",
                     "pre", "listing", "table", "hr", "li", "dd", "dt", "xmp",
                     "plaintext"});
}

bool is_heading(std::string_view t) {
  return t.size() == 2 && t[0] == 'h' && t[1] >= '1' && t[1] <= '6';
}

bool is_special(std::string_view t) {
  return closes_paragraph(t) ||
         in_list(t, {"applet", "area", "base", "body", "br", "button",
                     "caption", "col", "colgroup", "embed", "frame",
                     "frameset", "head", "html", "iframe", "img", "input",
                     "link", "marquee", "meta", "object", "select", "tbody",
                     "td", "textarea", "tfoot", "th", "thead", "title", "tr",
                     "wbr"});
}

bool is_scope_boundary(std::string_view t) {
  return in_list(t, {"html", "table", "td", "th", "caption", "marquee",
                     "object", "applet", "template"});
}

bool is_formatting(std::string_view t) {
  return in_list(t, {"a", "b", "big", "code", "em", "font", "i", "nobr", "s",
                     "small", "strike", "strong", "tt", "u"});
}

bool is_head_content(std::string_view t) {
  return in_list(t, {"base", "basefont", "bgsound", "link", "meta", "title",
                     "style", "script", "noscript", "template"});
}

class TreeBuilder {
 public:
  explicit TreeBuilder(const ParseConfig& config)
      : config_(config),
        dropped_(config.dropped_elements.begin(),
                 config.dropped_elements.end()),
        builder_(config.signature_attr) {}

  DomTree run(std::string_view html) {
    Tokenizer tok(html);
    while (true) {
      Token t = tok.next();
      if (t.kind == TokenKind::kEof) break;
      if (t.kind == TokenKind::kStartTag) {
        std::string raw;
        bool has_raw = tok.take_raw(raw);
        start_tag(std::move(t));
        if (has_raw && !raw.empty()) text(raw);
      } else if (t.kind == TokenKind::kEndTag) {
        end_tag(t.name);
      } else {
        text(t.text);
      }
    }
    if (builder_.size() == 0) {
      throw ParseError("input contains no elements");
    }
    flush_texts();
    return std::move(builder_).build();
  }

 private:
  struct Open {
    NodeId handle;
    std::string tag;
  };

  const std::string& current_tag() const { return stack_.back().tag; }

  NodeId insert(const std::string& tag, std::vector<Attribute> attrs,
                bool push) {
    std::optional<std::string> signature;
    for (auto it = attrs.begin(); it != attrs.end(); ++it) {
      if (it->name == config_.signature_attr) {
        signature = std::move(it->value);
        attrs.erase(it);
        break;
      }
    }
    NodeId parent = stack_.empty() ? kNoNode : stack_.back().handle;
    if (parent == kNoNode && builder_.size() > 0) {
      // Second top-level element in fragment mode.
      throw ParseError("fragment has more than one top-level element");
    }
    NodeId h = builder_.add(parent, tag, std::move(attrs), {},
                            std::move(signature));
    texts_.emplace_back();
    if (push) stack_.push_back({h, tag});
    return h;
  }

  void merge_attributes(NodeId h, std::vector<Attribute>& attrs) {
    DomNode& n = builder_.at(h);
    for (auto& a : attrs) {
      if (a.name == config_.signature_attr) continue;
      if (!n.attribute(a.name)) n.attributes.push_back(std::move(a));
    }
  }

  void pop_until(std::size_t index) {
    while (stack_.size() > index) stack_.pop_back();
  }

  // Index in stack_ of the topmost element named `tag`, stopping at scope
  // boundaries. Returns npos when out of scope.
  std::size_t find_in_scope(std::string_view tag,
                            std::initializer_list<std::string_view> extra =
                                {}) const {
    for (std::size_t i = stack_.size(); i-- > 0;) {
      const std::string& t = stack_[i].tag;
      if (t == tag) return i;
      if (is_scope_boundary(t) || in_list(t, extra)) break;
    }
    return std::string::npos;
  }

  void close_p_in_button_scope() {
    std::size_t i = find_in_scope("p", {"button"});
    if (i != std::string::npos) pop_until(i);
  }

  void ensure_html() {
    if (html_ != kNoNode) return;
    html_ = insert("html", {}, true);
  }

  void ensure_head() {
    ensure_html();
    if (head_ != kNoNode) return;
    pop_until(1);
    head_ = insert("head", {}, true);
    in_head_ = true;
  }

  void ensure_body() {
    ensure_html();
    if (body_ != kNoNode) return;
    if (in_head_) {
      in_head_ = false;
    }
    pop_until(1);
    body_ = insert("body", {}, true);
  }

  bool in_foreign() const {
    return std::any_of(stack_.begin(), stack_.end(), [](const Open& o) {
      return o.tag == "svg" || o.tag == "math";
    });
  }

  void start_tag(Token t) {
    if (skip_depth_ > 0) {
      if (t.name == skip_tag_ && !t.self_closing) ++skip_depth_;
      return;
    }
    if (dropped_.count(t.name)) {
      if (!is_void_element(t.name) && !t.self_closing) {
        skip_tag_ = t.name;
        skip_depth_ = 1;
      }
      return;
    }
    if (config_.fragment) {
      fragment_start(std::move(t));
      return;
    }
    const std::string& name = t.name;
    if (name == "html") {
      if (html_ == kNoNode) {
        html_ = insert("html", std::move(t.attributes), true);
      } else {
        merge_attributes(html_, t.attributes);
      }
      return;
    }
    if (body_ == kNoNode) {
      if (name == "head") {
        if (head_ == kNoNode) {
          ensure_html();
          head_ = insert("head", std::move(t.attributes), true);
          in_head_ = true;
        }
        return;
      }
      if (is_head_content(name) && !after_head_) {
        if (!in_head_) {
          if (head_ != kNoNode) return;  // head was already closed
          ensure_head();
        }
        insert(name, std::move(t.attributes), !is_void_element(name));
        return;
      }
      if (name == "body") {
        ensure_html();
        pop_until(1);
        in_head_ = false;
        body_ = insert("body", std::move(t.attributes), true);
        return;
      }
      ensure_body();
    }
    if (name == "body") {
      merge_attributes(body_, t.attributes);
      return;
    }
    if (name == "head") return;
    in_body_start(std::move(t));
  }

  void fragment_start(Token t) {
    if (stack_.empty() && builder_.size() > 0) {
      throw ParseError("fragment has more than one top-level element");
    }
    bool is_void = is_void_element(t.name) || (t.self_closing && in_foreign());
    insert(t.name, std::move(t.attributes), !is_void);
  }

  void in_body_start(Token t) {
    const std::string name = t.name;
    if (closes_paragraph(name)) close_p_in_button_scope();

    if (is_heading(name) && is_heading(current_tag())) {
      stack_.pop_back();
    } else if (name == "li") {
      close_list_item({"li"}, {"ul", "ol"});
    } else if (name == "dd" || name == "dt") {
      close_list_item({"dd", "dt"}, {"dl"});
    } else if (name == "a") {
      std::size_t i = find_in_scope("a");
      if (i != std::string::npos) pop_until(i);
    } else if (name == "button") {
      std::size_t i = find_in_scope("button");
      if (i != std::string::npos) pop_until(i);
    } else if (name == "form") {
      if (std::any_of(stack_.begin(), stack_.end(),
                      [](const Open& o) { return o.tag == "form"; })) {
        return;
      }
    } else if (name == "option") {
      if (current_tag() == "option") stack_.pop_back();
    } else if (name == "optgroup") {
      if (current_tag() == "option") stack_.pop_back();
      if (current_tag() == "optgroup") stack_.pop_back();
    } else if (name == "thead" || name == "tbody" || name == "tfoot") {
      close_table_parts({"thead", "tbody", "tfoot", "tr", "td", "th"});
    } else if (name == "tr") {
      close_table_parts({"tr", "td", "th"});
      if (current_tag() == "table") insert("tbody", {}, true);
    } else if (name == "td" || name == "th") {
      close_table_parts({"td", "th"});
      if (current_tag() == "table") insert("tbody", {}, true);
      if (in_list(current_tag(), {"tbody", "thead", "tfoot"})) {
        insert("tr", {}, true);
      }
    } else if (name == "caption" || name == "colgroup") {
      close_table_parts({"thead", "tbody", "tfoot", "tr", "td", "th"});
    }

    bool is_void = is_void_element(name) || (t.self_closing && in_foreign());
    insert(name, std::move(t.attributes), !is_void);
  }

  void close_list_item(std::initializer_list<std::string_view> items,
                       std::initializer_list<std::string_view> lists) {
    for (std::size_t i = stack_.size(); i-- > 0;) {
      const std::string& t = stack_[i].tag;
      if (in_list(t, items)) {
        pop_until(i);
        return;
      }
      if (in_list(t, lists)) return;
      if (is_special(t) && t != "address" && t != "div" && t != "p") return;
    }
  }

  // Pops open table parts listed in `parts` until the nearest table.
  void close_table_parts(std::initializer_list<std::string_view> parts) {
    for (std::size_t i = stack_.size(); i-- > 0;) {
      const std::string& t = stack_[i].tag;
      if (t == "table" || t == "html") return;
      if (in_list(t, parts)) {
        pop_until(i);
        return;
      }
    }
  }

  void end_tag(const std::string& name) {
    if (skip_depth_ > 0) {
      if (name == skip_tag_ && --skip_depth_ == 0) skip_tag_.clear();
      return;
    }
    if (dropped_.count(name)) return;
    if (config_.fragment) {
      for (std::size_t i = stack_.size(); i-- > 0;) {
        if (stack_[i].tag == name) {
          pop_until(i);
          return;
        }
      }
      return;
    }
    if (name == "head") {
      if (in_head_) {
        pop_until(1);
        in_head_ = false;
        after_head_ = true;
      }
      return;
    }
    if (name == "html" || name == "body") return;
    if (body_ == kNoNode) {
      if (in_head_) {
        for (std::size_t i = stack_.size(); i-- > 2;) {
          if (stack_[i].tag == name) {
            pop_until(i);
            return;
          }
        }
        return;
      }
      if (name != "p" && name != "br") return;
      ensure_body();
    }
    if (name == "br") {
      insert("br", {}, false);
      return;
    }
    if (name == "p") {
      std::size_t i = find_in_scope("p", {"button"});
      if (i == std::string::npos) {
        insert("p", {}, false);
      } else {
        pop_until(i);
      }
      return;
    }
    if (name == "li") {
      std::size_t i = find_in_scope("li", {"ul", "ol"});
      if (i != std::string::npos) pop_until(i);
      return;
    }
    if (is_formatting(name)) {
      std::size_t i = find_in_scope(name);
      if (i != std::string::npos && i >= 2) pop_until(i);
      return;
    }
    if (is_special(name)) {
      // Block-level end tags close everything up to the matching element,
      // including implied li/p/option ends.
      std::size_t i = find_in_scope(name);
      if (i != std::string::npos && i >= 2) pop_until(i);
      return;
    }
    for (std::size_t i = stack_.size(); i-- > 2;) {
      const std::string& t = stack_[i].tag;
      if (t == name) {
        pop_until(i);
        return;
      }
      if (is_special(t)) return;
    }
  }

  void text(const std::string& s) {
    if (skip_depth_ > 0) return;
    bool blank = std::all_of(s.begin(), s.end(),
                             [](char c) { return is_space(c); });
    if (config_.fragment) {
      if (stack_.empty() || blank) return;
    } else if (body_ == kNoNode) {
      if (blank) return;
      if (in_head_ && !stack_.empty() && stack_.back().handle != head_) {
        // Text inside title and similar head elements.
      } else {
        ensure_body();
      }
    }
    if (stack_.empty()) return;
    if (blank) return;
    std::string& dst = texts_[stack_.back().handle];
    if (!dst.empty()) dst += ' ';
    dst += s;
  }

  void flush_texts() {
    for (std::size_t h = 0; h < texts_.size(); ++h) {
      std::string out;
      bool pending_space = false;
      for (char c : texts_[h]) {
        if (is_space(c)) {
          pending_space = !out.empty();
          continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
      }
      builder_.at(static_cast<NodeId>(h)).own_text = std::move(out);
    }
  }

  const ParseConfig& config_;
  std::unordered_set<std::string> dropped_;
  DomTreeBuilder builder_;
  std::vector<Open> stack_;
  std::vector<std::string> texts_;
  NodeId html_ = kNoNode;
  NodeId head_ = kNoNode;
  NodeId body_ = kNoNode;
  bool in_head_ = false;
  bool after_head_ = false;
  std::string skip_tag_;
  int skip_depth_ = 0;
};

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      out += static_cast<char>(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    }
    bool ok = len > 0 && i + len <= bytes.size();
    std::uint32_t cp = ok ? (c & (0x7F >> len)) : 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
      ok = false;
    }
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out += "\xEF\xBF\xBD";
      ++i;
    }
  }
  return out;
}

DomTree parse_html(std::string_view html, const ParseConfig& config) {
  std::string clean = sanitize_utf8(html);
  if (std::all_of(clean.begin(), clean.end(), [](char c) { return is_space(c); })) {
    throw ParseError("empty input");
  }
  TreeBuilder builder(config);
  return builder.run(clean);
}

}  // namespace erratum

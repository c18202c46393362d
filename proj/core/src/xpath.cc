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

#include "erratum/xpath.h"

#include <algorithm>
#include <charconv>
#include <optional>

#include "erratum/error.h"

namespace erratum {
namespace {

struct Predicate {
  // Either a position (> 0 selects, <= 0 selects nothing) or an attribute
  // equality test.
  std::optional<long> position;
  std::string attribute;
  std::string value;
};

struct Step {
  std::string name;
  std::vector<Predicate> predicates;
};

struct Path {
  bool absolute = false;
  std::vector<Step> steps;
};

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Path parse() {
    Path path;
    skip_ws();
    if (eof()) syntax("empty expression");
    if (peek() == '/') {
      path.absolute = true;
      ++pos_;
      if (!eof() && peek() == '/') unsupported("descendant axis '//'");
    }
    while (true) {
      path.steps.push_back(step());
      skip_ws();
      if (eof()) break;
      if (peek() == '|') unsupported("union operator");
      if (peek() != '/') syntax("unexpected character");
      ++pos_;
      if (!eof() && peek() == '/') unsupported("descendant axis '//'");
    }
    return path;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n')) {
      ++pos_;
    }
  }

  [[noreturn]] void syntax(const std::string& what) const {
    throw XPathSyntaxError("invalid XPath '" + std::string(s_) + "' at " +
                           std::to_string(pos_) + ": " + what);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw UnsupportedXPathError("unsupported XPath '" + std::string(s_) +
                                "': " + what);
  }

  std::string name() {
    std::size_t start = pos_;
    while (!eof() && is_name_char(peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Step step() {
    skip_ws();
    if (eof()) syntax("missing step");
    char c = peek();
    if (c == '*') unsupported("wildcard name test");
    if (c == '.') unsupported("abbreviated step");
    if (c == '@') unsupported("attribute axis");
    if (c == '(') unsupported("grouped expression");
    Step st;
    st.name = name();
    if (st.name.empty()) syntax("expected element name");
    skip_ws();
    if (!eof() && peek() == ':') unsupported("axis specifier");
    if (!eof() && peek() == '(') unsupported("function call");
    for (char& ch : st.name) {
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    }
    while (!eof() && peek() == '[') {
      ++pos_;
      st.predicates.push_back(predicate());
      skip_ws();
    }
    return st;
  }

  Predicate predicate() {
    skip_ws();
    if (eof()) syntax("unterminated predicate");
    Predicate p;
    if (peek() >= '0' && peek() <= '9') {
      std::size_t start = pos_;
      while (!eof() && peek() >= '0' && peek() <= '9') ++pos_;
      long v = 0;
      auto [ptr, ec] =
          std::from_chars(s_.data() + start, s_.data() + pos_, v);
      if (ec != std::errc()) syntax("position out of range");
      p.position = v;
    } else if (peek() == '@') {
      ++pos_;
      p.attribute = name();
      if (p.attribute.empty()) syntax("expected attribute name");
      skip_ws();
      if (eof()) syntax("unterminated predicate");
      if (peek() != '=') unsupported("predicate other than attribute equality");
      ++pos_;
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) {
        unsupported("non-literal comparison");
      }
      char quote = peek();
      ++pos_;
      std::size_t close = s_.find(quote, pos_);
      if (close == std::string_view::npos) syntax("unterminated string");
      p.value = std::string(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
    } else {
      unsupported("predicate expression");
    }
    skip_ws();
    if (eof()) syntax("unterminated predicate");
    if (peek() != ']') unsupported("compound predicate");
    ++pos_;
    return p;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<NodeId> apply_predicates(const DomTree& tree,
                                     std::vector<NodeId> nodes,
                                     const std::vector<Predicate>& preds) {
  for (const Predicate& p : preds) {
    std::vector<NodeId> kept;
    if (p.position) {
      long k = *p.position;
      if (k >= 1 && static_cast<std::size_t>(k) <= nodes.size()) {
        kept.push_back(nodes[k - 1]);
      }
    } else {
      for (NodeId n : nodes) {
        const std::string* v = tree[n].attribute(p.attribute);
        if (v && *v == p.value) kept.push_back(n);
      }
    }
    nodes = std::move(kept);
  }
  return nodes;
}

}  // namespace

std::string absolute_xpath(const DomTree& tree, NodeId node) {
  tree.node(node);  // validates the id
  std::vector<NodeId> chain;
  for (NodeId n = node; n != kNoNode; n = tree[n].parent) chain.push_back(n);
  std::string out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const DomNode& n = tree[*it];
    out += '/';
    out += n.tag;
    out += '[';
    out += std::to_string(n.sibling_index);
    out += ']';
  }
  return out;
}

std::vector<NodeId> eval_xpath(const DomTree& tree, std::string_view locator) {
  Path path = Parser(locator).parse();
  if (tree.empty()) return {};

  std::vector<NodeId> context;
  std::size_t first = 0;
  if (path.absolute) {
    // The virtual document node has the root as its only child.
    const Step& s = path.steps[0];
    std::vector<NodeId> candidates;
    if (tree[tree.root()].tag == s.name) candidates.push_back(tree.root());
    context = apply_predicates(tree, std::move(candidates), s.predicates);
    first = 1;
  } else {
    context.push_back(tree.root());
  }

  for (std::size_t i = first; i < path.steps.size() && !context.empty(); ++i) {
    const Step& s = path.steps[i];
    std::vector<NodeId> next;
    for (NodeId c : context) {
      std::vector<NodeId> candidates;
      for (NodeId child : tree[c].children) {
        if (tree[child].tag == s.name) candidates.push_back(child);
      }
      auto selected = apply_predicates(tree, std::move(candidates), s.predicates);
      next.insert(next.end(), selected.begin(), selected.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    context = std::move(next);
  }
  return context;
}

}  // namespace erratum

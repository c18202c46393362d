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

#include "erratum/dom.h"

#include <algorithm>
#include <atomic>
#include <string>
#include <unordered_map>

#include "erratum/error.h"

namespace erratum {
namespace {

std::atomic<std::uint64_t> g_signature_reads{0};

class Fnv1a {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    // Field separator so ("ab","c") and ("a","bc") differ.
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
  }
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xff;
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void escape_text(std::string_view in, std::string& out) {
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void escape_attribute(std::string_view in, std::string& out) {
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::uint64_t signature_read_count() { return g_signature_reads.load(); }

const std::string* DomNode::attribute(std::string_view name) const {
  for (const auto& attr : attributes) {
    if (attr.name == name) return &attr.value;
  }
  return nullptr;
}

const std::optional<std::string>& DomNode::signature() const {
  g_signature_reads.fetch_add(1, std::memory_order_relaxed);
  return signature_;
}

const DomNode& DomTree::node(NodeId id) const {
  if (!contains(id)) {
    throw InvalidNodeError("unknown node id " + std::to_string(id));
  }
  return nodes_[id];
}

NodeId DomTree::find_signature(std::string_view signature) const {
  g_signature_reads.fetch_add(1, std::memory_order_relaxed);
  for (const auto& n : nodes_) {
    if (n.signature_ && *n.signature_ == signature) return n.id;
  }
  return kNoNode;
}

int DomTree::depth(NodeId id) const {
  int d = 0;
  for (NodeId p = node(id).parent; p != kNoNode; p = nodes_[p].parent) ++d;
  return d;
}

std::uint64_t DomTree::compute_digest() const {
  Fnv1a h;
  h.add(static_cast<std::uint64_t>(nodes_.size()));
  for (const auto& n : nodes_) {
    h.add(static_cast<std::uint64_t>(n.parent + 1));
    h.add(n.tag);
    h.add(static_cast<std::uint64_t>(n.attributes.size()));
    for (const auto& a : n.attributes) {
      h.add(a.name);
      h.add(a.value);
    }
    h.add(n.own_text);
  }
  return h.value();
}

std::uint64_t DomTree::empty_digest() {
  Fnv1a h;
  h.add(std::uint64_t{0});
  return h.value();
}

bool operator==(const DomTree& a, const DomTree& b) {
  if (a.root_ != b.root_ || a.signature_attr_ != b.signature_attr_ ||
      a.nodes_.size() != b.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const DomNode& x = a.nodes_[i];
    const DomNode& y = b.nodes_[i];
    if (x.id != y.id || x.parent != y.parent || x.tag != y.tag ||
        x.attributes != y.attributes || x.own_text != y.own_text ||
        x.children != y.children || x.sibling_index != y.sibling_index ||
        x.signature_ != y.signature_) {
      return false;
    }
  }
  return true;
}

DomTreeBuilder::DomTreeBuilder(std::string signature_attr)
    : signature_attr_(std::move(signature_attr)) {}

NodeId DomTreeBuilder::add(NodeId parent, std::string tag,
                           std::vector<Attribute> attributes,
                           std::string own_text,
                           std::optional<std::string> signature) {
  if (tag.empty()) throw ParseError("element with empty tag name");
  const auto handle = static_cast<NodeId>(nodes_.size());
  if (parent == kNoNode) {
    if (root_ != kNoNode) throw ParseError("tree already has a root");
    root_ = handle;
  } else if (parent < 0 || parent >= handle) {
    throw InvalidNodeError("parent handle " + std::to_string(parent) +
                           " does not exist");
  }
  DomNode n;
  n.id = handle;
  n.parent = parent;
  n.tag = std::move(tag);
  n.attributes = std::move(attributes);
  n.own_text = std::move(own_text);
  n.signature_ = std::move(signature);
  nodes_.push_back(std::move(n));
  if (parent != kNoNode) nodes_[parent].children.push_back(handle);
  return handle;
}

NodeId DomTreeBuilder::add_copy(NodeId parent, const DomNode& source) {
  return add(parent, source.tag, source.attributes, source.own_text,
             source.signature_);
}

DomTree DomTreeBuilder::build() && {
  if (root_ == kNoNode) throw ParseError("document has no root element");

  // Pre-order renumbering.
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId h = stack.back();
    stack.pop_back();
    order.push_back(h);
    const auto& kids = nodes_[h].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  std::vector<NodeId> new_id(nodes_.size(), kNoNode);
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = static_cast<NodeId>(i);
  }

  DomTree tree;
  tree.signature_attr_ = std::move(signature_attr_);
  tree.root_ = 0;
  tree.nodes_.reserve(order.size());
  for (NodeId h : order) {
    DomNode n = std::move(nodes_[h]);
    n.id = new_id[h];
    n.parent = n.parent == kNoNode ? kNoNode : new_id[n.parent];
    for (auto& c : n.children) c = new_id[c];
    tree.nodes_.push_back(std::move(n));
  }
  for (auto& n : tree.nodes_) {
    std::unordered_map<std::string_view, int> seen;
    for (NodeId c : n.children) {
      tree.nodes_[c].sibling_index = ++seen[tree.nodes_[c].tag];
    }
  }
  tree.nodes_[0].sibling_index = 1;
  tree.digest_ = tree.compute_digest();
  return tree;
}

DomTree filter_tree(const DomTree& tree,
                    const std::function<bool(const DomNode&)>& drop) {
  DomTreeBuilder b(tree.signature_attr());
  std::vector<NodeId> handle(tree.size(), kNoNode);
  for (const DomNode& n : tree.nodes()) {
    NodeId parent_handle = kNoNode;
    if (n.parent != kNoNode) {
      parent_handle = handle[n.parent];
      if (parent_handle == kNoNode || drop(n)) continue;
    }
    handle[n.id] = b.add_copy(parent_handle, n);
  }
  return std::move(b).build();
}

DomTree assign_signatures(const DomTree& tree) {
  DomTreeBuilder b(tree.signature_attr());
  for (const DomNode& n : tree.nodes()) {
    NodeId h = b.add_copy(n.parent, n);
    if (!b.has_signature(h)) b.set_signature(h, "s" + std::to_string(n.id));
  }
  return std::move(b).build();
}

bool is_void_element(std::string_view tag) {
  static constexpr std::string_view kVoid[] = {
      "area", "base",  "br",   "col",   "embed",  "hr",    "img",
      "input", "keygen", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(std::begin(kVoid), std::end(kVoid), tag) != std::end(kVoid);
}

std::string to_html(const DomTree& tree, const HtmlWriteOptions& options) {
  std::string out;
  if (options.doctype) out += "<!DOCTYPE html>\n";
  if (tree.empty()) return out;

  // Iterative walk; a negative entry closes the element.
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    NodeId top = stack.back();
    stack.pop_back();
    if (top < 0) {
      const DomNode& n = tree[-top - 1];
      out += "</" + n.tag + ">";
      continue;
    }
    const DomNode& n = tree[top];
    out += '<';
    out += n.tag;
    for (const auto& a : n.attributes) {
      out += ' ';
      out += a.name;
      out += "=\"";
      escape_attribute(a.value, out);
      out += '"';
    }
    if (options.include_signatures) {
      const auto& sig = n.signature();
      if (sig) {
        out += ' ';
        out += tree.signature_attr();
        out += "=\"";
        escape_attribute(*sig, out);
        out += '"';
      }
    }
    out += '>';
    if (is_void_element(n.tag)) continue;
    escape_text(n.own_text, out);
    stack.push_back(-top - 1);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  out += '\n';
  return out;
}

}  // namespace erratum

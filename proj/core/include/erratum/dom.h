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

// Canonical ordered labeled tree of HTML elements.
//
// A DomTree is immutable once built. Node ids are dense in [0, size()) and
// follow document (pre-)order, so iterating nodes() visits elements in the
// order their start tags appear in the source.

#ifndef ERRATUM_DOM_H_
#define ERRATUM_DOM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erratum {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

inline constexpr std::string_view kDefaultSignatureAttr = "data-erratum-sig";

struct Attribute {
  std::string name;
  std::string value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

class DomTree;

class DomNode {
 public:
  NodeId id = kNoNode;
  NodeId parent = kNoNode;
  std::string tag;
  std::vector<Attribute> attributes;
  // Text directly under this element, whitespace-collapsed. Text of child
  // elements is not included.
  std::string own_text;
  std::vector<NodeId> children;
  // 1-based position among siblings sharing this node's tag.
  int sibling_index = 1;

  // Value of the named attribute, or nullptr. Never returns the signature.
  const std::string* attribute(std::string_view name) const;

  // Ground-truth identifier. Reads are counted process-wide (see
  // signature_read_count()) so tests can assert that the algorithms under
  // evaluation never consult it.
  const std::optional<std::string>& signature() const;

 private:
  friend class DomTreeBuilder;
  friend class DomTree;
  friend bool operator==(const DomTree& a, const DomTree& b);
  std::optional<std::string> signature_;
};

// Number of DomNode::signature() / DomTree::find_signature() calls made so
// far by any thread.
std::uint64_t signature_read_count();

class DomTree {
 public:
  DomTree() = default;

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size();
  }

  // Throws InvalidNodeError for unknown ids.
  const DomNode& node(NodeId id) const;
  const DomNode& operator[](NodeId id) const { return nodes_[id]; }
  std::span<const DomNode> nodes() const { return nodes_; }

  const std::string& signature_attr() const { return signature_attr_; }

  // Node carrying the given signature, or kNoNode.
  NodeId find_signature(std::string_view signature) const;

  // Number of edges from the root.
  int depth(NodeId id) const;

  // Stable 64-bit digest of structure, labels and text (signatures
  // excluded). Equal trees have equal digests.
  std::uint64_t digest() const { return digest_; }

  friend bool operator==(const DomTree& a, const DomTree& b);

 private:
  friend class DomTreeBuilder;
  std::uint64_t compute_digest() const;

  std::vector<DomNode> nodes_;
  NodeId root_ = kNoNode;
  std::string signature_attr_{kDefaultSignatureAttr};
  // Trees are immutable once built, so the digest is computed once.
  std::uint64_t digest_ = DomTree::empty_digest();

  static std::uint64_t empty_digest();
};

// Incremental construction. Nodes may be added in any order as long as a
// parent is added before its children; build() renumbers in pre-order.
class DomTreeBuilder {
 public:
  explicit DomTreeBuilder(
      std::string signature_attr = std::string(kDefaultSignatureAttr));

  // Appends a node as the last child of `parent` (kNoNode for the root).
  // Returns a builder-local handle.
  NodeId add(NodeId parent, std::string tag, std::vector<Attribute> attributes,
             std::string own_text = {},
             std::optional<std::string> signature = std::nullopt);

  // Copies tag, attributes, text and signature of `source`.
  NodeId add_copy(NodeId parent, const DomNode& source);

  DomNode& at(NodeId handle) { return nodes_[handle]; }
  void set_signature(NodeId handle, std::optional<std::string> signature) {
    nodes_[handle].signature_ = std::move(signature);
  }
  bool has_signature(NodeId handle) const {
    return nodes_[handle].signature_.has_value();
  }
  std::size_t size() const { return nodes_.size(); }

  // Throws ParseError if no root was added.
  DomTree build() &&;

 private:
  std::vector<DomNode> nodes_;
  NodeId root_ = kNoNode;
  std::string signature_attr_;
};

struct ParseConfig {
  // Fragment mode keeps the single top-level element as the root instead of
  // wrapping content in html/body.
  bool fragment = false;
  // Elements removed together with their content.
  std::vector<std::string> dropped_elements = {"script", "style", "noscript",
                                               "template"};
  // Attribute holding ground-truth signatures. It is moved out of the
  // attribute list into DomNode::signature().
  std::string signature_attr{kDefaultSignatureAttr};
};

// Parses HTML into a DomTree. Malformed markup is repaired the way browsers
// do (implied html/body, auto-closed paragraphs and list items, implicit
// tbody). Throws ParseError when the input holds no element at all.
DomTree parse_html(std::string_view html, const ParseConfig& config = {});

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Copy of `tree` without the subtrees whose root satisfies `drop`. The root
// itself is never dropped.
DomTree filter_tree(const DomTree& tree,
                    const std::function<bool(const DomNode&)>& drop);

// Copy of `tree` with signatures "s<id>" on every node that lacks one.
DomTree assign_signatures(const DomTree& tree);

struct HtmlWriteOptions {
  bool include_signatures = true;
  bool doctype = true;
};

// Serializes a tree back to HTML. parse_html(to_html(t)) reproduces t for
// trees produced by parse_html.
std::string to_html(const DomTree& tree, const HtmlWriteOptions& options = {});

bool is_void_element(std::string_view tag);

}  // namespace erratum

#endif  // ERRATUM_DOM_H_

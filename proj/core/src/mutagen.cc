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

#include "erratum/mutagen.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "erratum/error.h"
#include "erratum/random.h"

namespace erratum {
namespace {

constexpr std::array<std::pair<MutationKind, std::string_view>, 11> kNames = {{
    {MutationKind::kStructureRemove, "structure.remove"},
    {MutationKind::kStructureDuplicate, "structure.duplicate"},
    {MutationKind::kStructureWrap, "structure.wrap"},
    {MutationKind::kStructureUnwrap, "structure.unwrap"},
    {MutationKind::kStructureSwap, "structure.swap"},
    {MutationKind::kAttributeRemove, "attribute.remove"},
    {MutationKind::kAttributeRemoveWords, "attribute.remove-words"},
    {MutationKind::kContentReplaceRandom, "content.replace-random"},
    {MutationKind::kContentChangeLetters, "content.change-letters"},
    {MutationKind::kContentRemove, "content.remove"},
    {MutationKind::kContentRemoveWords, "content.remove-words"},
}};

constexpr std::array<std::string_view, 32> kFiller = {
    "lorem",  "ipsum",   "dolor",  "amet",    "vivamus", "tempor",
    "magna",  "aliqua",  "veniam", "nostrud", "ullamco", "laboris",
    "nisi",   "commodo", "irure",  "velit",   "cillum",  "fugiat",
    "nulla",  "sint",    "culpa",  "officia", "mollit",  "anim",
    "porta",  "felis",   "augue",  "metus",   "lectus",  "turpis",
    "nunc",   "justo"};

constexpr std::array<std::string_view, 8> kWrapperClasses = {
    "wrapper", "container", "inner", "box", "holder", "group", "outer", "ctx"};

// Elements whose parent/child relations the parser enforces. Wrapping or
// unwrapping them would not survive a serialize/parse round trip.
bool is_structural(std::string_view tag) {
  static constexpr std::string_view kTags[] = {
      "table", "thead", "tbody", "tfoot", "tr",     "td",       "th",
      "caption", "colgroup", "col", "ul", "ol",     "dl",       "li",
      "dt",    "dd",    "select", "option", "optgroup", "datalist"};
  return std::find(std::begin(kTags), std::end(kTags), tag) != std::end(kTags);
}

// Containers that may appear under any flow element.
bool is_container(std::string_view tag) {
  return tag == "table" || tag == "ul" || tag == "ol" || tag == "dl" ||
         tag == "select";
}

bool is_phrasing(std::string_view tag) {
  static constexpr std::string_view kTags[] = {
      "a",     "abbr",  "b",      "bdi",   "bdo",    "br",    "button",
      "cite",  "code",  "data",   "dfn",   "em",     "i",     "img",
      "input", "kbd",   "label",  "mark",  "q",      "s",     "samp",
      "small", "span",  "strong", "sub",   "sup",    "time",  "u",
      "var",   "wbr",   "p",      "h1",    "h2",     "h3",    "h4",
      "h5",    "h6",    "pre",    "textarea", "svg", "picture", "video",
      "audio", "iframe", "canvas", "meter", "progress", "output", "legend",
      "summary"};
  return std::find(std::begin(kTags), std::end(kTags), tag) != std::end(kTags);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

bool has_ascii_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

struct MNode {
  std::string tag;
  std::vector<Attribute> attributes;
  std::string text;
  std::optional<std::string> signature;
  int parent = -1;
  std::vector<int> children;
  bool alive = true;
  bool original = false;
};

class Arena {
 public:
  Arena(const DomTree& tree, Rng& rng) : rng_(rng) {
    nodes_.reserve(tree.size() * 2);
    for (const DomNode& n : tree.nodes()) {
      MNode m;
      m.tag = n.tag;
      m.attributes = n.attributes;
      m.text = n.own_text;
      m.signature = n.signature();
      if (!m.signature) {
        throw MutationError("node " + std::to_string(n.id) +
                            " has no signature");
      }
      if (!used_.insert(*m.signature).second) {
        throw MutationError("duplicate signature " + *m.signature);
      }
      m.parent = n.parent;
      m.children.assign(n.children.begin(), n.children.end());
      m.original = true;
      nodes_.push_back(std::move(m));
    }
    region_ = 0;
    if (nodes_[0].tag == "html") {
      for (int c : nodes_[0].children) {
        if (nodes_[c].tag == "body") region_ = c;
      }
    }
    original_count_ = static_cast<int>(nodes_.size());
  }

  int original_count() const { return original_count_; }
  const MNode& at(int i) const { return nodes_[i]; }

  bool eligible(MutationKind kind, int i) const {
    const MNode& n = nodes_[i];
    if (!n.alive || !n.original) return false;
    switch (kind) {
      case MutationKind::kStructureRemove:
      case MutationKind::kStructureDuplicate:
        return in_region(i);
      case MutationKind::kStructureWrap:
        return in_region(i) && !is_structural(n.tag) &&
               !(is_structural(nodes_[n.parent].tag) &&
                 !is_cell(nodes_[n.parent].tag));
      case MutationKind::kStructureUnwrap: {
        if (!in_region(i) || is_structural(n.tag)) return false;
        const std::string& ptag = nodes_[n.parent].tag;
        if (is_structural(ptag) && !is_cell(ptag)) return false;
        for (int c : n.children) {
          if (is_structural(nodes_[c].tag) && !is_container(nodes_[c].tag)) {
            return false;
          }
        }
        return true;
      }
      case MutationKind::kStructureSwap:
        return in_region(i) && nodes_[n.parent].children.size() >= 2 &&
               !is_table_section(n.tag);
      case MutationKind::kAttributeRemove:
        return !n.attributes.empty();
      case MutationKind::kAttributeRemoveWords:
        return std::any_of(n.attributes.begin(), n.attributes.end(),
                           [](const Attribute& a) {
                             return split_words(a.value).size() >= 2;
                           });
      case MutationKind::kContentReplaceRandom:
      case MutationKind::kContentRemove:
        return !n.text.empty();
      case MutationKind::kContentChangeLetters:
        return has_ascii_letter(n.text);
      case MutationKind::kContentRemoveWords:
        return split_words(n.text).size() >= 2;
    }
    return false;
  }

  MutationOp apply(MutationKind kind, int i) {
    MutationOp op{kind, *nodes_[i].signature, nlohmann::ordered_json::object()};
    switch (kind) {
      case MutationKind::kStructureRemove: {
        int removed = kill(i);
        detach(i);
        op.payload["removedNodes"] = removed;
        break;
      }
      case MutationKind::kStructureDuplicate: {
        int parent = nodes_[i].parent;
        int clone = copy_subtree(i, parent);
        auto& kids = nodes_[parent].children;
        kids.pop_back();
        kids.insert(std::find(kids.begin(), kids.end(), i) + 1, clone);
        op.payload["clone"] = *nodes_[clone].signature;
        break;
      }
      case MutationKind::kStructureWrap: {
        int parent = nodes_[i].parent;
        MNode w;
        w.tag = is_phrasing(nodes_[i].tag) || is_phrasing(nodes_[parent].tag)
                    ? "span"
                    : "div";
        if (uniform01(rng_) < 0.5) {
          w.attributes.push_back(
              {"class", std::string(kWrapperClasses[uniform_index(
                            rng_, kWrapperClasses.size())])});
        }
        w.signature = fresh();
        w.parent = parent;
        w.children = {i};
        int wid = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(w));
        auto& kids = nodes_[parent].children;
        *std::find(kids.begin(), kids.end(), i) = wid;
        nodes_[i].parent = wid;
        op.payload["wrapper"] = nodes_[wid].tag;
        op.payload["signature"] = *nodes_[wid].signature;
        break;
      }
      case MutationKind::kStructureUnwrap: {
        int parent = nodes_[i].parent;
        MNode& n = nodes_[i];
        auto& kids = nodes_[parent].children;
        auto it = kids.erase(std::find(kids.begin(), kids.end(), i));
        for (int c : n.children) nodes_[c].parent = parent;
        kids.insert(it, n.children.begin(), n.children.end());
        if (!n.text.empty()) {
          std::string& pt = nodes_[parent].text;
          pt = pt.empty() ? n.text : pt + " " + n.text;
        }
        op.payload["tag"] = n.tag;
        op.payload["children"] = n.children.size();
        n.children.clear();
        n.alive = false;
        break;
      }
      case MutationKind::kStructureSwap: {
        auto& kids = nodes_[nodes_[i].parent].children;
        std::vector<std::size_t> others;
        std::size_t self = 0;
        for (std::size_t k = 0; k < kids.size(); ++k) {
          if (kids[k] == i) {
            self = k;
          } else if (!is_table_section(nodes_[kids[k]].tag)) {
            others.push_back(k);
          }
        }
        if (others.empty()) throw MutationError("swap without sibling");
        std::size_t other = others[uniform_index(rng_, others.size())];
        std::swap(kids[self], kids[other]);
        const MNode& o = nodes_[kids[self]];
        op.payload["with"] = o.signature ? *o.signature : std::string();
        break;
      }
      case MutationKind::kAttributeRemove: {
        auto& attrs = nodes_[i].attributes;
        std::size_t k = uniform_index(rng_, attrs.size());
        op.payload["attribute"] = attrs[k].name;
        op.payload["value"] = attrs[k].value;
        attrs.erase(attrs.begin() + static_cast<std::ptrdiff_t>(k));
        break;
      }
      case MutationKind::kAttributeRemoveWords: {
        auto& attrs = nodes_[i].attributes;
        std::vector<std::size_t> multi;
        for (std::size_t k = 0; k < attrs.size(); ++k) {
          if (split_words(attrs[k].value).size() >= 2) multi.push_back(k);
        }
        Attribute& a = attrs[multi[uniform_index(rng_, multi.size())]];
        auto [kept, removed] = drop_words(split_words(a.value));
        op.payload["attribute"] = a.name;
        op.payload["removed"] = removed;
        a.value = join_words(kept);
        break;
      }
      case MutationKind::kContentReplaceRandom: {
        std::string& t = nodes_[i].text;
        std::size_t count = std::max<std::size_t>(1, split_words(t).size());
        std::vector<std::string> words;
        for (std::size_t k = 0; k < count; ++k) {
          words.emplace_back(kFiller[uniform_index(rng_, kFiller.size())]);
        }
        op.payload["before"] = t;
        t = join_words(words);
        op.payload["after"] = t;
        break;
      }
      case MutationKind::kContentChangeLetters: {
        std::string& t = nodes_[i].text;
        std::vector<std::size_t> letters;
        for (std::size_t k = 0; k < t.size(); ++k) {
          char c = t[k];
          if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            letters.push_back(k);
          }
        }
        std::size_t changes = 1 + uniform_index(
            rng_, std::max<std::size_t>(1, letters.size() / 5));
        op.payload["before"] = t;
        for (std::size_t k : sample(letters, changes, rng_)) {
          char c;
          do {
            c = static_cast<char>('a' + uniform_index(rng_, 26));
          } while (c == t[k]);
          t[k] = c;
        }
        op.payload["after"] = t;
        break;
      }
      case MutationKind::kContentRemove: {
        op.payload["before"] = nodes_[i].text;
        nodes_[i].text.clear();
        break;
      }
      case MutationKind::kContentRemoveWords: {
        std::string& t = nodes_[i].text;
        auto [kept, removed] = drop_words(split_words(t));
        op.payload["removed"] = removed;
        t = join_words(kept);
        break;
      }
    }
    return op;
  }

  DomTree build(const std::string& signature_attr) const {
    DomTreeBuilder b(signature_attr);
    std::vector<std::pair<int, NodeId>> stack{{0, kNoNode}};
    while (!stack.empty()) {
      auto [i, parent] = stack.back();
      stack.pop_back();
      const MNode& n = nodes_[i];
      NodeId h = b.add(parent, n.tag, n.attributes, n.text, n.signature);
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
        stack.push_back({*it, h});
      }
    }
    return std::move(b).build();
  }

 private:
  static bool is_cell(std::string_view tag) { return tag == "td" || tag == "th"; }
  static bool is_table_section(std::string_view tag) {
    return tag == "thead" || tag == "tbody" || tag == "tfoot" ||
           tag == "caption" || tag == "colgroup";
  }

  bool in_region(int i) const {
    if (i == region_) return false;
    for (int p = nodes_[i].parent; p != -1; p = nodes_[p].parent) {
      if (p == region_) return true;
    }
    return false;
  }

  std::string fresh() {
    std::string s;
    do {
      s = "n" + std::to_string(next_fresh_++);
    } while (!used_.insert(s).second);
    return s;
  }

  int kill(int i) {
    int count = 0;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      nodes_[k].alive = false;
      ++count;
      for (int c : nodes_[k].children) stack.push_back(c);
    }
    return count;
  }

  void detach(int i) {
    auto& kids = nodes_[nodes_[i].parent].children;
    kids.erase(std::find(kids.begin(), kids.end(), i));
  }

  // Appends a copy of subtree i under parent; returns the copy's index.
  int copy_subtree(int i, int parent) {
    MNode c;
    c.tag = nodes_[i].tag;
    c.attributes = nodes_[i].attributes;
    c.text = nodes_[i].text;
    c.signature = fresh();
    c.parent = parent;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(c));
    nodes_[parent].children.push_back(id);
    std::vector<int> kids = nodes_[i].children;
    for (int k : kids) copy_subtree(k, id);
    return id;
  }

  // Removes between 1 and size-1 words.
  std::pair<std::vector<std::string>, std::vector<std::string>> drop_words(
      std::vector<std::string> words) {
    std::size_t n = 1 + uniform_index(rng_, words.size() - 1);
    std::vector<std::size_t> idx(words.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    auto gone = sample(idx, n, rng_);
    std::sort(gone.begin(), gone.end());
    std::vector<std::string> kept, removed;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (std::binary_search(gone.begin(), gone.end(), k)) {
        removed.push_back(words[k]);
      } else {
        kept.push_back(words[k]);
      }
    }
    return {kept, removed};
  }

  Rng& rng_;
  std::vector<MNode> nodes_;
  std::unordered_set<std::string> used_;
  int region_ = 0;
  int original_count_ = 0;
  std::uint64_t next_fresh_ = 0;
};

}  // namespace

std::string_view kind_name(MutationKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

MutationKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw MutationError("unknown mutation kind '" + std::string(name) + "'");
}

MutationCategory kind_category(MutationKind kind) {
  switch (kind) {
    case MutationKind::kStructureRemove:
    case MutationKind::kStructureDuplicate:
    case MutationKind::kStructureWrap:
    case MutationKind::kStructureUnwrap:
    case MutationKind::kStructureSwap:
      return MutationCategory::kStructure;
    case MutationKind::kAttributeRemove:
    case MutationKind::kAttributeRemoveWords:
      return MutationCategory::kAttribute;
    default:
      return MutationCategory::kContent;
  }
}

std::string_view category_name(MutationCategory category) {
  switch (category) {
    case MutationCategory::kStructure: return "structure";
    case MutationCategory::kAttribute: return "attribute";
    case MutationCategory::kContent: return "content";
  }
  return "unknown";
}

std::vector<MutationKind> all_kinds() {
  std::vector<MutationKind> out;
  for (const auto& [k, name] : kNames) out.push_back(k);
  return out;
}

std::vector<MutationKind> kinds_in(MutationCategory category) {
  std::vector<MutationKind> out;
  for (const auto& [k, name] : kNames) {
    if (kind_category(k) == category) out.push_back(k);
  }
  return out;
}

std::vector<MutationKind> parse_kinds(std::string_view list) {
  std::vector<MutationKind> out;
  auto add = [&](MutationKind k) {
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  };
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "all") {
      for (auto k : all_kinds()) add(k);
    } else if (item == "structure") {
      for (auto k : kinds_in(MutationCategory::kStructure)) add(k);
    } else if (item == "attribute") {
      for (auto k : kinds_in(MutationCategory::kAttribute)) add(k);
    } else if (item == "content") {
      for (auto k : kinds_in(MutationCategory::kContent)) add(k);
    } else if (!item.empty()) {
      add(parse_kind(item));
    }
    start = end + 1;
  }
  if (out.empty()) throw MutationError("empty mutation kind list");
  return out;
}

MutantRecord mutate(const DomTree& tree, double ratio,
                    const std::vector<MutationKind>& kinds,
                    std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw MutationError("mutation ratio must be in [0, 1]");
  }
  if (kinds.empty()) throw MutationError("no mutation kinds requested");
  if (tree.empty()) throw MutationError("cannot mutate an empty tree");

  Rng rng(seed);
  Arena arena(tree, rng);
  const int n = arena.original_count();
  const auto requested = static_cast<std::size_t>(std::llround(ratio * n));

  MutantRecord record;
  record.requested_ratio = ratio;
  record.seed = seed;
  std::vector<bool> touched(n, false);
  std::vector<int> candidates;
  for (std::size_t op = 0; op < requested; ++op) {
    // Kinds are drawn in random order until one has an eligible node.
    // Untouched nodes are preferred so operations rarely stack.
    std::vector<MutationKind> order = kinds;
    shuffle(order, rng);
    int target = -1;
    MutationKind kind = order.front();
    for (bool allow_touched : {false, true}) {
      for (MutationKind k : order) {
        candidates.clear();
        for (int i = 0; i < n; ++i) {
          if ((allow_touched || !touched[i]) && arena.eligible(k, i)) {
            candidates.push_back(i);
          }
        }
        if (!candidates.empty()) {
          kind = k;
          target = candidates[uniform_index(rng, candidates.size())];
          break;
        }
      }
      if (target >= 0) break;
    }
    if (target < 0) {
      if (record.ops.empty()) {
        throw MutationError("no node is eligible for the requested kinds");
      }
      break;
    }
    touched[target] = true;
    record.ops.push_back(arena.apply(kind, target));
  }

  record.original = tree;
  // The serialized form is what a consumer of the dataset sees, so the
  // mutant is re-parsed from it.
  ParseConfig pc;
  pc.signature_attr = tree.signature_attr();
  pc.fragment = tree[tree.root()].tag != "html";
  record.mutant = parse_html(to_html(arena.build(tree.signature_attr())), pc);
  record.ratio = static_cast<double>(record.ops.size()) / n;

  std::unordered_map<std::string, NodeId> by_sig;
  for (const DomNode& m : record.mutant.nodes()) {
    if (const auto& s = m.signature()) by_sig.emplace(*s, m.id);
  }
  for (int i = 0; i < n; ++i) {
    const std::string& sig = *arena.at(i).signature;
    auto it = by_sig.find(sig);
    record.ground_truth[sig] = it == by_sig.end() ? kNoNode : it->second;
  }
  return record;
}

std::uint64_t mutant_seed(std::uint64_t dataset_seed, std::size_t page,
                          std::size_t index) {
  return derive_seed(derive_seed(dataset_seed, page), index);
}

std::vector<MutantRecord> generate_dataset(const std::vector<DomTree>& pages,
                                           std::uint64_t seed,
                                           const DatasetConfig& config) {
  if (pages.empty()) throw MutationError("empty page list");
  if (config.mutants_per_page < 0) {
    throw MutationError("mutants_per_page must be non-negative");
  }
  if (!(config.min_ratio >= 0.0 && config.min_ratio <= config.max_ratio &&
        config.max_ratio <= 1.0)) {
    throw MutationError("invalid ratio range");
  }
  if (config.kinds.empty()) throw MutationError("no mutation kinds requested");

  std::vector<MutantRecord> out;
  out.reserve(pages.size() * config.mutants_per_page);
  for (std::size_t p = 0; p < pages.size(); ++p) {
    bool signed_page = std::all_of(
        pages[p].nodes().begin(), pages[p].nodes().end(),
        [](const DomNode& n) { return n.signature().has_value(); });
    DomTree page = signed_page ? pages[p] : assign_signatures(pages[p]);
    for (int i = 0; i < config.mutants_per_page; ++i) {
      std::uint64_t s = mutant_seed(seed, p, static_cast<std::size_t>(i));
      Rng rng(s);
      double ratio = config.min_ratio +
                     (1.0 - uniform01(rng)) * (config.max_ratio - config.min_ratio);
      std::vector<MutationKind> kinds = config.kinds;
      if (config.constrained) shuffle(kinds, rng);
      std::uint64_t mseed = rng();
      if (!config.constrained) {
        out.push_back(mutate(page, ratio, kinds, mseed));
        continue;
      }
      // A single kind; the next one is tried when it has no eligible node.
      bool done = false;
      for (MutationKind k : kinds) {
        try {
          out.push_back(mutate(page, ratio, {k}, mseed));
          done = true;
          break;
        } catch (const MutationError&) {
        }
      }
      if (!done) {
        throw MutationError("no node of page " + std::to_string(p) +
                            " is eligible for the requested kinds");
      }
    }
  }
  return out;
}

nlohmann::ordered_json record_to_json(const MutantRecord& record) {
  nlohmann::ordered_json ops = nlohmann::ordered_json::array();
  for (const auto& op : record.ops) {
    ops.push_back({{"kind", kind_name(op.kind)},
                   {"target", op.target},
                   {"payload", op.payload}});
  }
  nlohmann::ordered_json gt = nlohmann::ordered_json::object();
  for (const auto& [sig, id] : record.ground_truth) {
    gt[sig] = id == kNoNode ? nlohmann::ordered_json(nullptr)
                            : nlohmann::ordered_json(id);
  }
  return {{"ops", ops},
          {"groundTruth", gt},
          {"ratio", record.ratio},
          {"requestedRatio", record.requested_ratio},
          {"seed", record.seed}};
}

MutantRecord record_from_json(const nlohmann::ordered_json& json,
                              DomTree original, DomTree mutant) {
  MutantRecord r;
  try {
    for (const auto& op : json.at("ops")) {
      r.ops.push_back({parse_kind(op.at("kind").get<std::string>()),
                       op.at("target").get<std::string>(), op.at("payload")});
    }
    for (const auto& [sig, id] : json.at("groundTruth").items()) {
      NodeId v = id.is_null() ? kNoNode : id.get<NodeId>();
      if (v != kNoNode && !mutant.contains(v)) {
        throw MutationError("ground truth names unknown node " +
                            std::to_string(v));
      }
      r.ground_truth[sig] = v;
    }
    r.ratio = json.at("ratio").get<double>();
    r.requested_ratio = json.at("requestedRatio").get<double>();
    r.seed = json.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw MutationError(std::string("malformed mutant record: ") + e.what());
  }
  r.original = std::move(original);
  r.mutant = std::move(mutant);
  return r;
}

}  // namespace erratum

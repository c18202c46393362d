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

// Topological propagation.
//
// For a candidate pair (x, y) with label similarity l(x, y) in [0, 1]:
//   C(x, y) = sum over children c of x of max over children c' of y of
//             l(c, c'), divided by max(#children(x), #children(y))
//   P(x, y) = h(parent(x), parent(y)), 0 when either node is a root
//   s(x, y) = s0(x, y) + w * P(x, y) + w * C(x, y)
// where h is l after (passes - 1) rounds of
//   h'(x, y) = (l(x, y) + w * P(x, y) + w * C(x, y)) / (1 + 2w).
// Every term is maximal for a node paired with an identical copy of itself,
// so the identity matching stays optimal when both trees are equal.
//
// Pairs without shared unpruned tokens can still be right: nodes whose only
// tokens are common tags never get an initial score. Two rules add such
// pairs before scoring: ancestors of a candidate pair are paired while
// their tags agree, and children left without any candidate are paired with
// same-tag candidate-less children of the partner.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"

#include "erratum/error.h"
#include "erratum/sftm.h"
#include "sftm_internal.h"

namespace erratum {
namespace {

std::uint64_t key(NodeId l, NodeId r) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l)) << 32) |
         static_cast<std::uint32_t>(r);
}

// Pairs in insertion order, starting with the initial table's entries.
// Those are found by binary search in their table row; pairs added later go
// to a small hash index.
class PairSet {
 public:
  explicit PairSet(const SimilarityTable& initial) : initial_(initial) {
    pairs_.reserve(initial.size() + initial.size() / 4);
    pairs_ = initial.entries();
  }

  // Returns true when the pair was new.
  bool add(NodeId l, NodeId r) {
    if (find_initial(l, r) >= 0) return false;
    auto [it, inserted] = added_.try_emplace(key(l, r), pairs_.size());
    if (inserted) pairs_.push_back({l, r, 0.0});
    return inserted;
  }
  // Position of a pair, or -1.
  std::int64_t find(NodeId l, NodeId r) const {
    std::int64_t pos = find_initial(l, r);
    if (pos >= 0 || added_.empty()) return pos;
    auto it = added_.find(key(l, r));
    return it == added_.end() ? -1 : static_cast<std::int64_t>(it->second);
  }
  std::vector<SimilarityEntry>& pairs() { return pairs_; }

 private:
  std::int64_t find_initial(NodeId l, NodeId r) const {
    auto [b, e] = initial_.row(l);
    auto it = std::lower_bound(
        b, e, r, [](const SimilarityEntry& s, NodeId v) { return s.right < v; });
    if (it == e || it->right != r) return -1;
    return it - initial_.entries().data();
  }

  const SimilarityTable& initial_;
  std::vector<SimilarityEntry> pairs_;
  absl::flat_hash_map<std::uint64_t, std::size_t> added_;
};

void pair_orphans(const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                  const std::vector<int>& tag_l, const std::vector<int>& tag_r,
                  PairSet& set, std::vector<std::size_t>& worklist) {
  constexpr std::size_t kAllPairsLimit = 64;
  // Group by tag, document order (ascending id) within a group.
  auto grouped = [](std::vector<NodeId> ids, const std::vector<int>& tag) {
    std::sort(ids.begin(), ids.end(), [&](NodeId p, NodeId q) {
      return tag[p] != tag[q] ? tag[p] < tag[q] : p < q;
    });
    return ids;
  };
  const std::vector<NodeId> lefts = grouped(a, tag_l);
  const std::vector<NodeId> rights = grouped(b, tag_r);
  std::size_t i = 0, j = 0;
  while (i < lefts.size() && j < rights.size()) {
    const int lt = tag_l[lefts[i]];
    const int rt = tag_r[rights[j]];
    if (lt < rt) {
      ++i;
      continue;
    }
    if (rt < lt) {
      ++j;
      continue;
    }
    std::size_t i_end = i, j_end = j;
    while (i_end < lefts.size() && tag_l[lefts[i_end]] == lt) ++i_end;
    while (j_end < rights.size() && tag_r[rights[j_end]] == rt) ++j_end;
    const std::size_t nl = i_end - i, nr = j_end - j;
    for (std::size_t x = i; x < i_end; ++x) {
      if (nl * nr <= kAllPairsLimit) {
        for (std::size_t y = j; y < j_end; ++y) {
          if (set.add(lefts[x], rights[y])) {
            worklist.push_back(set.pairs().size() - 1);
          }
        }
      } else if (x - i < nr) {
        // Same rank among same-tag siblings.
        if (set.add(lefts[x], rights[j + (x - i)])) {
          worklist.push_back(set.pairs().size() - 1);
        }
      }
    }
    i = i_end;
    j = j_end;
  }
}

}  // namespace

SimilarityTable propagate(const SimilarityTable& initial, const DomTree& left,
                          const DomTree& right, const SftmConfig& config) {
  config.validate();
  if (initial.stage() != SimilarityStage::kInitial) {
    throw ProvenanceError("propagate expects an initial similarity table");
  }
  if (initial.left_size() != left.size() ||
      initial.right_size() != right.size() ||
      initial.left_digest() != left.digest() ||
      initial.right_digest() != right.digest()) {
    throw ProvenanceError("similarity table was built from other trees");
  }
  const TokenIndex& index = initial.index();
  const double w = config.propagation_weight;

  PairSet set(initial);

  // Flat parent and interned tag arrays; the walks below touch them a lot.
  std::vector<NodeId> parent_l(left.size()), parent_r(right.size());
  std::vector<int> tag_l(left.size()), tag_r(right.size());
  {
    absl::flat_hash_map<std::string_view, int> tags;
    auto flatten = [&](const DomTree& tree, std::vector<NodeId>& parent,
                       std::vector<int>& tag) {
      for (const DomNode& node : tree.nodes()) {
        parent[node.id] = node.parent;
        tag[node.id] =
            tags.try_emplace(node.tag, static_cast<int>(tags.size())).first->second;
      }
    };
    flatten(left, parent_l, tag_l);
    flatten(right, parent_r, tag_r);
  }

  // Ancestor walk.
  const std::size_t n_initial = set.pairs().size();
  for (std::size_t i = 0; i < n_initial; ++i) {
    NodeId px = parent_l[set.pairs()[i].left];
    NodeId py = parent_r[set.pairs()[i].right];
    while (px != kNoNode && py != kNoNode && tag_l[px] == tag_r[py]) {
      if (!set.add(px, py)) break;
      px = parent_l[px];
      py = parent_r[py];
    }
  }

  // Orphan pairing, using candidate status from before this step.
  std::vector<char> has_left(left.size(), 0);
  std::vector<char> has_right(right.size(), 0);
  for (const auto& p : set.pairs()) {
    has_left[p.left] = 1;
    has_right[p.right] = 1;
  }
  std::vector<std::size_t> worklist(set.pairs().size());
  for (std::size_t i = 0; i < worklist.size(); ++i) worklist[i] = i;
  std::vector<NodeId> orphans_left, orphans_right;
  for (std::size_t w_i = 0; w_i < worklist.size(); ++w_i) {
    const SimilarityEntry p = set.pairs()[worklist[w_i]];
    orphans_left.clear();
    orphans_right.clear();
    for (NodeId c : left[p.left].children) {
      if (!has_left[c]) orphans_left.push_back(c);
    }
    if (orphans_left.empty()) continue;
    for (NodeId c : right[p.right].children) {
      if (!has_right[c]) orphans_right.push_back(c);
    }
    if (orphans_right.empty()) continue;
    pair_orphans(orphans_left, orphans_right, tag_l, tag_r, set, worklist);
  }

  auto& pairs = set.pairs();
  const std::size_t n = pairs.size();
  std::vector<double> lsim(n);
  for (std::size_t i = 0; i < n; ++i) {
    lsim[i] = index.label_similarity(pairs[i].left, pairs[i].right);
  }

  // Child agreement depends on labels only, so it is computed once. Children
  // with the same label class are compared once and weighted by their count.
  const auto max_kids = static_cast<std::size_t>(config.max_children_compared);
  struct ClassRun {
    NodeId rep;
    int count;
  };
  auto distinct_children = [&](const DomTree& tree,
                               const std::vector<int>& cls) {
    std::vector<std::size_t> start(tree.size() + 1, 0);
    std::vector<ClassRun> runs;
    std::vector<int> seen;
    for (const DomNode& node : tree.nodes()) {
      start[node.id] = runs.size();
      seen.clear();
      std::size_t n = std::min(node.children.size(), max_kids);
      for (std::size_t k = 0; k < n; ++k) {
        NodeId c = node.children[k];
        auto it = std::find(seen.begin(), seen.end(), cls[c]);
        if (it == seen.end()) {
          seen.push_back(cls[c]);
          runs.push_back({c, 1});
        } else {
          ++runs[start[node.id] + static_cast<std::size_t>(it - seen.begin())]
                .count;
        }
      }
    }
    start[tree.size()] = runs.size();
    return std::make_pair(std::move(start), std::move(runs));
  };
  const auto [kid_start_l, kids_l] = distinct_children(left, index.class_left);
  const auto [kid_start_r, kids_r] = distinct_children(right, index.class_right);
  std::vector<double> child(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId x = pairs[i].left, y = pairs[i].right;
    const std::size_t nx = std::min(left[x].children.size(), max_kids);
    const std::size_t ny = std::min(right[y].children.size(), max_kids);
    if (nx == 0 || ny == 0) continue;
    double sum = 0.0;
    for (std::size_t a = kid_start_l[x]; a < kid_start_l[x + 1]; ++a) {
      double best = 0.0;
      for (std::size_t b = kid_start_r[y]; b < kid_start_r[y + 1] && best < 1.0;
           ++b) {
        best = std::max(best, index.label_similarity(kids_l[a].rep, kids_r[b].rep));
      }
      sum += kids_l[a].count * best;
    }
    child[i] = sum / static_cast<double>(std::max(nx, ny));
  }

  // Parent pair of each pair: its position, or -1 with the label
  // similarity of the parents stored instead.
  std::vector<std::int64_t> parent_pos(n, -1);
  std::vector<double> parent_label(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    NodeId px = parent_l[pairs[i].left];
    NodeId py = parent_r[pairs[i].right];
    if (px == kNoNode || py == kNoNode) continue;
    parent_pos[i] = set.find(px, py);
    if (parent_pos[i] < 0) parent_label[i] = index.label_similarity(px, py);
  }
  auto parent_term = [&](std::size_t i, const std::vector<double>& h) {
    return parent_pos[i] >= 0 ? h[parent_pos[i]] : parent_label[i];
  };

  std::vector<double> h = lsim;
  for (int pass = 1; pass < config.propagation_passes; ++pass) {
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = (lsim[i] + w * parent_term(i, h) + w * child[i]) / (1 + 2 * w);
    }
    h = std::move(next);
  }

  // Initial pairs are already in (left, right) order; merging in the sorted
  // added pairs spares make_table a full sort.
  std::vector<std::pair<std::uint64_t, std::size_t>> added;
  added.reserve(n - n_initial);
  for (std::size_t i = n_initial; i < n; ++i) {
    added.push_back({key(pairs[i].left, pairs[i].right), i});
  }
  std::sort(added.begin(), added.end());
  std::vector<SimilarityEntry> out;
  out.reserve(n);
  auto emit = [&](std::size_t i) {
    double s = pairs[i].score + w * parent_term(i, h) + w * child[i];
    s = internal::quantize(s);
    if (s > 0.0) out.push_back({pairs[i].left, pairs[i].right, s});
  };
  std::size_t a = 0, b = 0;
  while (a < n_initial || b < added.size()) {
    if (b == added.size() ||
        (a < n_initial && key(pairs[a].left, pairs[a].right) < added[b].first)) {
      emit(a++);
    } else {
      emit(added[b++].second);
    }
  }
  return make_table(std::move(out), SimilarityStage::kPropagated,
                    initial.shared_index(), left, right);
}

}  // namespace erratum

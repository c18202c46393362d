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

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/container/flat_hash_map.h"

#include "erratum/error.h"
#include "erratum/sftm.h"
#include "sftm_internal.h"

namespace erratum {

double TokenIndex::label_similarity(NodeId x, NodeId y) const {
  if (class_left[x] == class_right[y]) return mass_left[x] > 0.0 ? 1.0 : 0.0;
  const auto& a = labels_left[x];
  const auto& b = labels_right[y];
  double shared = 0.0;
  std::size_t i = 0, j = 0;
  // Branch-free merge; the comparisons are unpredictable.
  while (i < a.size() && j < b.size()) {
    const int u = a[i], v = b[j];
    shared += u == v ? weight[u] : 0.0;
    i += u <= v;
    j += v <= u;
  }
  double denom = std::max(mass_left[x], mass_right[y]);
  if (denom <= 0.0) return 0.0;
  return std::min(1.0, shared / denom);
}

double SimilarityTable::score(NodeId left, NodeId right) const {
  auto [b, e] = row(left);
  auto it = std::lower_bound(
      b, e, right,
      [](const SimilarityEntry& s, NodeId r) { return s.right < r; });
  return it != e && it->right == right ? it->score : 0.0;
}

bool SimilarityTable::contains(NodeId left, NodeId right) const {
  auto [b, e] = row(left);
  auto it = std::lower_bound(
      b, e, right,
      [](const SimilarityEntry& s, NodeId r) { return s.right < r; });
  return it != e && it->right == right;
}

std::pair<const SimilarityEntry*, const SimilarityEntry*> SimilarityTable::row(
    NodeId left) const {
  if (left < 0 || static_cast<std::size_t>(left) >= left_size_) {
    return {nullptr, nullptr};
  }
  const SimilarityEntry* base = entries_.data();
  return {base + row_start_[left], base + row_start_[left + 1]};
}

SimilarityTable make_table(std::vector<SimilarityEntry> entries,
                           SimilarityStage stage,
                           std::shared_ptr<const TokenIndex> index,
                           const DomTree& left, const DomTree& right) {
  SimilarityTable t;
  t.left_size_ = left.size();
  t.right_size_ = right.size();
  t.row_start_.assign(left.size() + 1, 0);
  for (const auto& e : entries) {
    if (!left.contains(e.left) || !right.contains(e.right)) {
      throw InvalidNodeError("similarity entry outside the trees");
    }
    if (!std::isfinite(e.score) || e.score < 0.0) {
      throw Error("similarity scores must be finite and non-negative");
    }
    ++t.row_start_[e.left + 1];
  }
  for (std::size_t i = 1; i < t.row_start_.size(); ++i) {
    t.row_start_[i] += t.row_start_[i - 1];
  }
  auto before = [](const SimilarityEntry& a, const SimilarityEntry& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  };
  if (!std::is_sorted(entries.begin(), entries.end(), before)) {
    // Counting sort on left, then each (short) row on right.
    std::vector<SimilarityEntry> sorted(entries.size());
    std::vector<std::size_t> next(t.row_start_.begin(), t.row_start_.end() - 1);
    for (const auto& e : entries) sorted[next[e.left]++] = e;
    entries = std::move(sorted);
    for (std::size_t l = 0; l < left.size(); ++l) {
      auto begin = entries.begin() + static_cast<std::ptrdiff_t>(t.row_start_[l]);
      auto end =
          entries.begin() + static_cast<std::ptrdiff_t>(t.row_start_[l + 1]);
      if (!std::is_sorted(begin, end, before)) std::sort(begin, end, before);
    }
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].left == entries[i - 1].left &&
        entries[i].right == entries[i - 1].right) {
      throw Error("duplicate similarity entry");
    }
  }
  t.entries_ = std::move(entries);
  t.stage_ = stage;
  t.index_ = std::move(index);
  t.left_digest_ = left.digest();
  t.right_digest_ = right.digest();
  return t;
}

namespace internal {

double quantize(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace internal

SimilarityTable initial_similarity(const DomTree& left, const DomTree& right,
                                   const SftmConfig& config) {
  config.validate();
  if (left.empty() || right.empty()) {
    throw ParseError("cannot match an empty tree");
  }
  auto index = std::make_shared<TokenIndex>();
  absl::flat_hash_map<std::string, int> ids;
  auto labels_of = [&](const DomTree& tree,
                       std::vector<std::vector<int>>& labels) {
    labels.resize(tree.size());
    for (const DomNode& n : tree.nodes()) {
      auto& out = labels[n.id];
      for (auto& tok :
           tokenize(n, config.tokenizer, tree.signature_attr()).tokens) {
        auto [it, inserted] =
            ids.try_emplace(std::move(tok), static_cast<int>(ids.size()));
        if (inserted) index->tokens.push_back(it->first);
        out.push_back(it->second);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  };
  labels_of(left, index->labels_left);
  labels_of(right, index->labels_right);
  {
    absl::flat_hash_map<std::vector<int>, int> classes;
    auto classify = [&](const std::vector<std::vector<int>>& labels,
                        std::vector<int>& out) {
      out.resize(labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = classes.try_emplace(labels[i], static_cast<int>(classes.size()))
                     .first->second;
      }
    };
    classify(index->labels_left, index->class_left);
    classify(index->labels_right, index->class_right);
  }

  const std::size_t n_tokens = index->tokens.size();
  index->count_left.assign(n_tokens, 0);
  index->count_right.assign(n_tokens, 0);
  for (const auto& l : index->labels_left) {
    for (int t : l) ++index->count_left[t];
  }
  for (const auto& l : index->labels_right) {
    for (int t : l) ++index->count_right[t];
  }

  const double threshold =
      std::max(config.prune_floor,
               std::sqrt(static_cast<double>(left.size()) *
                         static_cast<double>(right.size())));
  index->weight.resize(n_tokens);
  index->pruned.assign(n_tokens, false);
  index->postings_left.resize(n_tokens);
  index->postings_right.resize(n_tokens);
  for (std::size_t t = 0; t < n_tokens; ++t) {
    double cl = std::max(1, index->count_left[t]);
    double cr = std::max(1, index->count_right[t]);
    index->weight[t] = 1.0 / std::pow(cl * cr, config.weight_exponent);
    index->pruned[t] = cl * cr > threshold;
  }
  for (NodeId x = 0; x < static_cast<NodeId>(left.size()); ++x) {
    for (int t : index->labels_left[x]) {
      if (!index->pruned[t] && index->count_right[t] > 0) {
        index->postings_left[t].push_back(x);
      }
    }
  }
  for (NodeId y = 0; y < static_cast<NodeId>(right.size()); ++y) {
    for (int t : index->labels_right[y]) {
      if (!index->pruned[t] && index->count_left[t] > 0) {
        index->postings_right[t].push_back(y);
      }
    }
  }
  auto mass = [&](const std::vector<std::vector<int>>& labels) {
    std::vector<double> out(labels.size(), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (int t : labels[i]) out[i] += index->weight[t];
    }
    return out;
  };
  index->mass_left = mass(index->labels_left);
  index->mass_right = mass(index->labels_right);

  // Row-wise sparse accumulation over shared unpruned tokens.
  std::vector<SimilarityEntry> entries;
  std::vector<double> acc(right.size(), 0.0);
  std::vector<NodeId> touched;
  for (NodeId x = 0; x < static_cast<NodeId>(left.size()); ++x) {
    for (int t : index->labels_left[x]) {
      if (index->pruned[t]) continue;
      for (NodeId y : index->postings_right[t]) {
        if (acc[y] == 0.0) touched.push_back(y);
        acc[y] += index->weight[t];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (NodeId y : touched) {
      entries.push_back({x, y, internal::quantize(acc[y])});
      acc[y] = 0.0;
    }
    touched.clear();
  }
  return make_table(std::move(entries), SimilarityStage::kInitial,
                    std::move(index), left, right);
}

}  // namespace erratum

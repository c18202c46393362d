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
#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "erratum/error.h"
#include "erratum/random.h"
#include "erratum/sftm.h"
#include "sftm_internal.h"

namespace erratum {
namespace {

std::atomic<std::uint64_t> g_match_calls{0};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double hi = *mid;
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), mid);
  return (lo + hi) / 2.0;
}

constexpr std::int32_t kNone = -1;

// Indices sorted by descending value, ties in index order. Values are
// quantized to 1e-9 and non-negative, so an LSD radix sort over the
// integer keys gives the same order as a stable comparison sort.
std::vector<std::int32_t> descending_order(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::uint64_t> key(n);
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    key[i] = static_cast<std::uint64_t>(std::llround(values[i] * 1e9));
    top = std::max(top, key[i]);
  }
  for (auto& k : key) k = top - k;
  std::vector<std::int32_t> order(n), tmp(n);
  std::iota(order.begin(), order.end(), 0);
  constexpr int kBits = 11;
  constexpr std::uint64_t kMask = (1u << kBits) - 1;
  for (int shift = 0; shift < 64 && (top >> shift) != 0; shift += kBits) {
    std::vector<std::size_t> count((1u << kBits) + 1, 0);
    for (std::int32_t i : order) ++count[((key[i] >> shift) & kMask) + 1];
    for (std::size_t b = 1; b < count.size(); ++b) count[b] += count[b - 1];
    for (std::int32_t i : order) tmp[count[(key[i] >> shift) & kMask]++] = i;
    order.swap(tmp);
  }
  return order;
}

// Walker's alias table for O(1) sampling proportional to weights.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights)
      : prob_(weights.size()), alias_(weights.size()) {
    const std::size_t n = weights.size();
    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<double> scaled(n);
    std::vector<std::int32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::int32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      std::int32_t s = small.back(), l = large.back();
      small.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding.
    for (std::int32_t i : large) prob_[i] = 1.0, alias_[i] = i;
    for (std::int32_t i : small) prob_[i] = 1.0, alias_[i] = i;
  }

  std::int32_t sample(Rng& rng) const {
    auto i = static_cast<std::int32_t>(uniform_index(rng, prob_.size()));
    return uniform01(rng) < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::int32_t> alias_;
};

// Matching state over table entries.
class State {
 public:
  State(const std::vector<SimilarityEntry>& entries,
        const std::vector<double>& gain, std::size_t n_left,
        std::size_t n_right)
      : entries_(entries),
        gain_(gain),
        by_left_(n_left, kNone),
        by_right_(n_right, kNone) {}

  bool contains(std::int32_t e) const {
    return by_left_[entries_[e].left] == e;
  }
  std::int32_t at_left(NodeId l) const { return by_left_[l]; }
  std::int32_t at_right(NodeId r) const { return by_right_[r]; }

  void insert(std::int32_t e) {
    by_left_[entries_[e].left] = e;
    by_right_[entries_[e].right] = e;
    value_ += gain_[e];
  }
  void erase(std::int32_t e) {
    by_left_[entries_[e].left] = kNone;
    by_right_[entries_[e].right] = kNone;
    value_ -= gain_[e];
  }
  double value() const { return value_; }
  void reset_value(double v) { value_ = v; }
  const std::vector<std::int32_t>& by_left() const { return by_left_; }

 private:
  const std::vector<SimilarityEntry>& entries_;
  const std::vector<double>& gain_;
  std::vector<std::int32_t> by_left_;
  std::vector<std::int32_t> by_right_;
  double value_ = 0.0;
};

}  // namespace

Matching optimize(const SimilarityTable& table, const DomTree& left,
                  const DomTree& right, const SftmConfig& config) {
  config.validate();
  if (table.left_size() != left.size() ||
      table.right_size() != right.size()) {
    throw ProvenanceError("similarity table was built from other trees");
  }
  const auto& entries = table.entries();
  const std::size_t n = entries.size();

  Matching m;
  m.config = config;
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) scores[i] = entries[i].score;
  const double penalty =
      config.penalty ? *config.penalty : config.penalty_factor * median(scores);
  m.config.penalty = penalty;

  std::vector<double> gain(n);
  for (std::size_t i = 0; i < n; ++i) gain[i] = scores[i] - penalty;

  State state(entries, gain, left.size(), right.size());

  // Greedy start: best pairs first, ties in document order.
  std::vector<std::int32_t> order = descending_order(scores);
  for (std::int32_t e : order) {
    if (gain[e] <= 0.0) break;
    if (state.at_left(entries[e].left) == kNone &&
        state.at_right(entries[e].right) == kNone) {
      state.insert(e);
    }
  }

  // Metropolis walk. Moves toggle one pair sampled proportionally to its
  // score; adding a pair evicts whatever conflicts with it.
  std::vector<double> abs_gain(n);
  for (std::size_t i = 0; i < n; ++i) abs_gain[i] = std::abs(gain[i]);
  double t0 = config.initial_temperature
                  ? *config.initial_temperature
                  : median(abs_gain) / std::log(2.0);
  if (!(t0 > 0.0)) t0 = 1e-9;
  m.config.initial_temperature = t0;

  double total = 0.0;
  for (double v : scores) total += v;

  if (n > 0 && total > 0.0) {
    const AliasTable picker(scores);
    auto budget = static_cast<std::int64_t>(
        std::ceil(config.iteration_factor * static_cast<double>(n)));
    budget = std::clamp(budget, config.min_iterations, config.max_iterations);
    Rng rng(config.seed);
    double temperature = t0;
    const double frozen = t0 * 1e-6;
    double best = state.value();
    // Moves applied since the best configuration, as signed entry ids
    // (+e inserted, -e-1 erased), so the best can be restored.
    std::vector<std::int64_t> log;

    // Gain of toggling entry e, with the pairs it would evict.
    auto toggle_delta = [&](std::int32_t e, std::int32_t& evict_l,
                            std::int32_t& evict_r) {
      evict_l = evict_r = kNone;
      if (state.contains(e)) return -gain[e];
      evict_l = state.at_left(entries[e].left);
      evict_r = state.at_right(entries[e].right);
      double delta = gain[e];
      if (evict_l != kNone) delta -= gain[evict_l];
      if (evict_r != kNone) delta -= gain[evict_r];
      return delta;
    };
    auto apply = [&](std::int32_t e, std::int32_t evict_l,
                     std::int32_t evict_r) {
      if (state.contains(e)) {
        state.erase(e);
        log.push_back(-static_cast<std::int64_t>(e) - 1);
        return;
      }
      for (std::int32_t x : {evict_l, evict_r}) {
        if (x == kNone) continue;
        state.erase(x);
        log.push_back(-static_cast<std::int64_t>(x) - 1);
      }
      state.insert(e);
      log.push_back(e);
    };

    std::int64_t it = 0;
    for (; it < budget && temperature >= frozen; ++it) {
      temperature *= config.cooling;
      const std::int32_t e = picker.sample(rng);
      std::int32_t evict_l, evict_r;
      double delta = toggle_delta(e, evict_l, evict_r);
      bool accept = delta >= 0.0;
      if (!accept) accept = uniform01(rng) < std::exp(delta / temperature);
      if (!accept) continue;
      apply(e, evict_l, evict_r);
      if (state.value() > best + 1e-12) {
        best = state.value();
        log.clear();
      }
    }
    // Roll back to the best configuration seen.
    for (auto r = log.rbegin(); r != log.rend(); ++r) {
      if (*r >= 0) {
        state.erase(static_cast<std::int32_t>(*r));
      } else {
        state.insert(static_cast<std::int32_t>(-*r - 1));
      }
    }
    log.clear();
    // Once frozen only uphill moves are ever accepted, so the rest of the
    // budget goes to sweeps over all moves in entry order.
    for (bool improved = true; improved && it < budget;) {
      improved = false;
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(n) && it < budget;
           ++e, ++it) {
        std::int32_t evict_l, evict_r;
        if (toggle_delta(e, evict_l, evict_r) > 1e-12) {
          apply(e, evict_l, evict_r);
          improved = true;
        }
      }
    }
  }

  m.left_to_right.assign(left.size(), kNoNode);
  m.right_to_left.assign(right.size(), kNoNode);
  double sum = 0.0;
  for (NodeId l = 0; l < static_cast<NodeId>(left.size()); ++l) {
    std::int32_t e = state.by_left()[l];
    if (e == kNone) {
      m.unmatched_left.push_back(l);
      continue;
    }
    const auto& entry = entries[e];
    m.pairs.push_back({entry.left, entry.right, entry.score});
    m.left_to_right[entry.left] = entry.right;
    m.right_to_left[entry.right] = entry.left;
    sum += entry.score;
  }
  for (NodeId r = 0; r < static_cast<NodeId>(right.size()); ++r) {
    if (m.right_to_left[r] == kNoNode) m.unmatched_right.push_back(r);
  }
  m.total_score = internal::quantize(sum);
  return m;
}

Matching match_trees(const DomTree& left, const DomTree& right,
                     const SftmConfig& config) {
  g_match_calls.fetch_add(1, std::memory_order_relaxed);
  SimilarityTable s0 = initial_similarity(left, right, config);
  SimilarityTable s = propagate(s0, left, right, config);
  return optimize(s, left, right, config);
}

std::uint64_t match_trees_invocations() { return g_match_calls.load(); }

double matching_objective(const Matching& matching, double penalty) {
  double v = 0.0;
  for (const auto& p : matching.pairs) v += p.score - penalty;
  return v;
}

nlohmann::ordered_json matching_to_json(const Matching& matching) {
  nlohmann::ordered_json out;
  auto& pairs = out["pairs"];
  pairs = nlohmann::ordered_json::array();
  for (const auto& p : matching.pairs) {
    pairs.push_back({{"left", p.left}, {"right", p.right}, {"score", p.score}});
  }
  out["unmatchedLeft"] = matching.unmatched_left;
  out["unmatchedRight"] = matching.unmatched_right;
  out["totalScore"] = matching.total_score;
  out["config"] = config_to_json(matching.config);
  out["seed"] = matching.config.seed;
  return out;
}

}  // namespace erratum

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

// Similarity-based flexible tree matching.
//
// Matching runs in three stages that can also be invoked separately:
//   initial_similarity  label similarity from rarity-weighted shared tokens
//   propagate           adds parent and child agreement to each pair
//   optimize            Metropolis search for an injective matching
// match_trees() chains the three.

#ifndef ERRATUM_SFTM_H_
#define ERRATUM_SFTM_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"
#include "erratum/tokenize.h"

namespace erratum {

struct SftmConfig {
  TokenizerConfig tokenizer;

  // Token weight is 1 / (count_T(t) * count_T2(t))^weight_exponent.
  double weight_exponent = 1.0;
  // A token is pruned when count_T(t) * count_T2(t) exceeds
  // max(prune_floor, sqrt(|T| * |T2|)).
  double prune_floor = 64.0;

  // Weight of the parent and of the child agreement terms.
  double propagation_weight = 0.4;
  // Number of times parent agreement is fed back before the final scores
  // are computed.
  int propagation_passes = 1;
  // Child lists longer than this are truncated when computing child
  // agreement.
  int max_children_compared = 256;

  // Metropolis budget is iteration_factor * (#candidate pairs), clamped to
  // [min_iterations, max_iterations].
  double iteration_factor = 30.0;
  std::int64_t min_iterations = 1000;
  std::int64_t max_iterations = 5'000'000;
  // Once the temperature drops below 1e-6 of its initial value, the rest of
  // the budget is spent on sweeps of uphill moves in entry order.
  // Unset: chosen so that a downhill move of median size is accepted with
  // probability 1/2 at the start.
  std::optional<double> initial_temperature;
  double cooling = 0.999;
  // Pairs scoring below the penalty are never worth matching. Unset:
  // penalty_factor * median pair score.
  std::optional<double> penalty;
  double penalty_factor = 0.25;

  std::uint64_t seed = 0x5EED5EED;

  // Throws ConfigError when a parameter is out of range.
  void validate() const;
};

nlohmann::ordered_json config_to_json(const SftmConfig& config);
// Keys absent from `json` keep the values of `base`. Unknown keys throw
// ConfigError.
SftmConfig config_from_json(const nlohmann::ordered_json& json,
                            SftmConfig base = {});

// Token statistics of a tree pair.
struct TokenIndex {
  std::vector<std::string> tokens;
  std::vector<int> count_left;
  std::vector<int> count_right;
  std::vector<double> weight;
  std::vector<bool> pruned;
  // Nodes holding each unpruned token; empty for pruned tokens.
  std::vector<std::vector<NodeId>> postings_left;
  std::vector<std::vector<NodeId>> postings_right;
  // Sorted distinct token ids of each node.
  std::vector<std::vector<int>> labels_left;
  std::vector<std::vector<int>> labels_right;
  // Sum of the weights of a node's tokens.
  std::vector<double> mass_left;
  std::vector<double> mass_right;

  // Nodes with identical token sets share a label class, across both
  // trees.
  std::vector<int> class_left;
  std::vector<int> class_right;

  // Shared-token weight of (x, y) relative to the heavier label, in [0, 1].
  // Pruned tokens count here.
  double label_similarity(NodeId x, NodeId y) const;
};

enum class SimilarityStage { kInitial, kPropagated };

struct SimilarityEntry {
  NodeId left;
  NodeId right;
  double score;
};

// Sparse pair scores. Entries are sorted by (left, right).
class SimilarityTable {
 public:
  SimilarityStage stage() const { return stage_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<SimilarityEntry>& entries() const { return entries_; }

  // Score of a pair, 0 when absent.
  double score(NodeId left, NodeId right) const;
  bool contains(NodeId left, NodeId right) const;
  // Entries of one left node as [begin, end).
  std::pair<const SimilarityEntry*, const SimilarityEntry*> row(
      NodeId left) const;

  const TokenIndex& index() const { return *index_; }
  std::shared_ptr<const TokenIndex> shared_index() const { return index_; }
  std::uint64_t left_digest() const { return left_digest_; }
  std::uint64_t right_digest() const { return right_digest_; }
  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }

 private:
  friend SimilarityTable make_table(std::vector<SimilarityEntry> entries,
                                    SimilarityStage stage,
                                    std::shared_ptr<const TokenIndex> index,
                                    const DomTree& left, const DomTree& right);
  std::vector<SimilarityEntry> entries_;
  std::vector<std::size_t> row_start_;
  SimilarityStage stage_ = SimilarityStage::kInitial;
  std::shared_ptr<const TokenIndex> index_;
  std::uint64_t left_digest_ = 0;
  std::uint64_t right_digest_ = 0;
  std::size_t left_size_ = 0;
  std::size_t right_size_ = 0;
};

// Builds a table from unsorted entries; duplicates are not allowed.
SimilarityTable make_table(std::vector<SimilarityEntry> entries,
                           SimilarityStage stage,
                           std::shared_ptr<const TokenIndex> index,
                           const DomTree& left, const DomTree& right);

struct MatchedPair {
  NodeId left;
  NodeId right;
  double score;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  // Sorted by left id.
  std::vector<MatchedPair> pairs;
  std::vector<NodeId> unmatched_left;
  std::vector<NodeId> unmatched_right;
  double total_score = 0.0;
  // Configuration actually used, with penalty and temperature resolved.
  SftmConfig config;

  // Partner of each node, kNoNode when unmatched.
  std::vector<NodeId> left_to_right;
  std::vector<NodeId> right_to_left;
};

// Initial label similarity. Throws ParseError when a tree is empty.
SimilarityTable initial_similarity(const DomTree& left, const DomTree& right,
                                   const SftmConfig& config = {});

// Propagated similarity. Throws ProvenanceError when `initial` was not
// built from these trees or is not an initial table.
SimilarityTable propagate(const SimilarityTable& initial, const DomTree& left,
                          const DomTree& right, const SftmConfig& config = {});

// Injective matching approximately maximizing the sum of (score - penalty)
// over matched pairs. Deterministic for a fixed config.seed.
Matching optimize(const SimilarityTable& table, const DomTree& left,
                  const DomTree& right, const SftmConfig& config = {});

Matching match_trees(const DomTree& left, const DomTree& right,
                     const SftmConfig& config = {});

// Number of match_trees() calls so far in this process.
std::uint64_t match_trees_invocations();

// Sum of (score - penalty) over the matched pairs.
double matching_objective(const Matching& matching, double penalty);

nlohmann::ordered_json matching_to_json(const Matching& matching);

}  // namespace erratum

#endif  // ERRATUM_SFTM_H_

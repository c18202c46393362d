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

// Mutation dataset generation.
//
// A mutant is produced by applying random structure, attribute and content
// operators to a signed page. Signatures of surviving nodes are preserved
// so the true correspondence between the page and its mutant is known.

#ifndef ERRATUM_MUTAGEN_H_
#define ERRATUM_MUTAGEN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"

namespace erratum {

enum class MutationKind {
  kStructureRemove,
  kStructureDuplicate,
  kStructureWrap,
  kStructureUnwrap,
  kStructureSwap,
  kAttributeRemove,
  kAttributeRemoveWords,
  kContentReplaceRandom,
  kContentChangeLetters,
  kContentRemove,
  kContentRemoveWords,
};

enum class MutationCategory { kStructure, kAttribute, kContent };

// "structure.remove", "attribute.remove-words", "content.change-letters"...
std::string_view kind_name(MutationKind kind);
// Accepts the names above. Throws MutationError otherwise.
MutationKind parse_kind(std::string_view name);
MutationCategory kind_category(MutationKind kind);
std::string_view category_name(MutationCategory category);

std::vector<MutationKind> all_kinds();
std::vector<MutationKind> kinds_in(MutationCategory category);
// Parses a comma-separated list of kind names and category names
// ("structure", "attribute", "content", "all").
std::vector<MutationKind> parse_kinds(std::string_view list);

struct MutationOp {
  MutationKind kind;
  // Signature of the mutated node in the original tree.
  std::string target;
  nlohmann::ordered_json payload;
};

struct MutantRecord {
  DomTree original;
  DomTree mutant;
  std::vector<MutationOp> ops;
  // Original signature -> node of the mutant, or kNoNode when the node no
  // longer exists.
  std::map<std::string, NodeId> ground_truth;
  // Applied operations divided by the number of original nodes.
  double ratio = 0.0;
  double requested_ratio = 0.0;
  std::uint64_t seed = 0;
};

// Applies round(ratio * tree.size()) operations to `tree`. Every node of
// `tree` must carry a signature (see assign_signatures()). Throws
// MutationError for a ratio outside [0, 1], an empty kind list, a tree
// without signatures, or when no requested kind applies to any node.
MutantRecord mutate(const DomTree& tree, double ratio,
                    const std::vector<MutationKind>& kinds, std::uint64_t seed);

struct DatasetConfig {
  int mutants_per_page = 10;
  // Ratios are drawn uniformly from (min_ratio, max_ratio].
  double min_ratio = 0.0;
  double max_ratio = 0.25;
  std::vector<MutationKind> kinds = all_kinds();
  // When set, each mutant uses a single kind drawn from `kinds`.
  bool constrained = false;
};

// Mutants of every page. Pages without signatures are signed first.
// Deterministic for a seed. Throws MutationError on an empty page list.
std::vector<MutantRecord> generate_dataset(const std::vector<DomTree>& pages,
                                           std::uint64_t seed,
                                           const DatasetConfig& config = {});

// Seed used for mutant `index` of page `page`.
std::uint64_t mutant_seed(std::uint64_t dataset_seed, std::size_t page,
                          std::size_t index);

// {ops, groundTruth, ratio, requestedRatio, seed}; groundTruth maps each
// original signature to a mutant node id or null.
nlohmann::ordered_json record_to_json(const MutantRecord& record);

// Restores ops and ground truth from JSON; trees are supplied separately.
MutantRecord record_from_json(const nlohmann::ordered_json& json,
                              DomTree original, DomTree mutant);

}  // namespace erratum

#endif  // ERRATUM_MUTAGEN_H_

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

// Baseline locator repair in the style of WATER.
//
// Each element is relocated on its own: every node of the new tree with
// the same tag is scored against the element and the best one wins. The
// score combines the edit distance between absolute XPaths with attribute
// and text similarity. Rendered properties used by the original tool are
// not available to a static parser and are left out.

#ifndef ERRATUM_WATER_H_
#define ERRATUM_WATER_H_

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"

namespace erratum {

struct WaterConfig {
  double xpath_weight = 0.6;
  double attribute_weight = 0.25;
  double text_weight = 0.15;
  // Best candidates scoring below this are rejected.
  double threshold = 0.4;
  // Candidates examined in document order; 0 means all.
  std::size_t max_candidates = 0;

  // Throws ConfigError unless weights are non-negative and sum to 1 and the
  // threshold lies in [0, 1].
  void validate() const;
};

nlohmann::ordered_json water_config_to_json(const WaterConfig& config);
// Missing keys keep their defaults. Throws ConfigError.
WaterConfig water_config_from_json(const nlohmann::json& json);

struct WaterFeatures {
  double xpath = 0.0;
  double attributes = 0.0;
  double text = 0.0;
};

// Raw similarity features of two nodes; each lies in [0, 1].
WaterFeatures water_features(const DomTree& old_tree, NodeId e,
                             const DomTree& new_tree, NodeId candidate);

double water_score(const DomTree& old_tree, NodeId e, const DomTree& new_tree,
                   NodeId candidate, const WaterConfig& config = {});

struct WaterCandidate {
  NodeId node;
  double score;
};

// Candidates with the tag of `e`, best first; equal scores keep document
// order. Throws InvalidNodeError when `e` is not in old_tree.
std::vector<WaterCandidate> water_rank(const DomTree& old_tree,
                                       const DomTree& new_tree, NodeId e,
                                       const WaterConfig& config = {});

// Best candidate when it reaches the threshold.
std::optional<WaterCandidate> water_relocate(const DomTree& old_tree,
                                             const DomTree& new_tree, NodeId e,
                                             const WaterConfig& config = {});

}  // namespace erratum

#endif  // ERRATUM_WATER_H_

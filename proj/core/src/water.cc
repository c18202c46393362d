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

#include "erratum/water.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "erratum/error.h"
#include "erratum/strings.h"
#include "erratum/tokenize.h"
#include "erratum/xpath.h"

namespace erratum {
namespace {

std::vector<std::string> attribute_tokens(const DomTree& tree, NodeId id) {
  std::vector<std::string> t =
      tokenize(tree[id], TokenizerConfig{}, tree.signature_attr()).tokens;
  t.erase(t.begin());  // the tag
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

void check_node(const DomTree& tree, NodeId id, const char* which) {
  if (!tree.contains(id)) {
    throw InvalidNodeError(std::string(which) + " tree has no node " +
                           std::to_string(id));
  }
}

// Everything needed about the query element, computed once per call.
struct Query {
  std::string xpath;
  std::vector<std::string> attrs;
  const std::string* text;
};

WaterFeatures features(const Query& q, const DomTree& new_tree, NodeId c) {
  WaterFeatures f;
  f.xpath = normalized_similarity(q.xpath, absolute_xpath(new_tree, c));
  f.attributes = jaccard(q.attrs, attribute_tokens(new_tree, c));
  f.text = normalized_similarity(*q.text, new_tree[c].own_text);
  return f;
}

double combine(const WaterFeatures& f, const WaterConfig& config) {
  return config.xpath_weight * f.xpath +
         config.attribute_weight * f.attributes + config.text_weight * f.text;
}

Query make_query(const DomTree& tree, NodeId e) {
  return {absolute_xpath(tree, e), attribute_tokens(tree, e),
          &tree[e].own_text};
}

}  // namespace

void WaterConfig::validate() const {
  for (double w : {xpath_weight, attribute_weight, text_weight}) {
    if (!(w >= 0.0)) throw ConfigError("WATER weights must be non-negative");
  }
  if (std::abs(xpath_weight + attribute_weight + text_weight - 1.0) > 1e-9) {
    throw ConfigError("WATER weights must sum to 1");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("WATER threshold must be in [0, 1]");
  }
}

nlohmann::ordered_json water_config_to_json(const WaterConfig& config) {
  return {{"xpathWeight", config.xpath_weight},
          {"attributeWeight", config.attribute_weight},
          {"textWeight", config.text_weight},
          {"threshold", config.threshold},
          {"maxCandidates", config.max_candidates}};
}

WaterConfig water_config_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw ConfigError("WATER config must be an object");
  WaterConfig c;
  try {
    for (const auto& [key, value] : json.items()) {
      if (key == "xpathWeight") {
        c.xpath_weight = value.get<double>();
      } else if (key == "attributeWeight") {
        c.attribute_weight = value.get<double>();
      } else if (key == "textWeight") {
        c.text_weight = value.get<double>();
      } else if (key == "threshold") {
        c.threshold = value.get<double>();
      } else if (key == "maxCandidates") {
        c.max_candidates = value.get<std::size_t>();
      } else {
        throw ConfigError("unknown WATER config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad WATER config: ") + e.what());
  }
  c.validate();
  return c;
}

WaterFeatures water_features(const DomTree& old_tree, NodeId e,
                             const DomTree& new_tree, NodeId candidate) {
  check_node(old_tree, e, "old");
  check_node(new_tree, candidate, "new");
  return features(make_query(old_tree, e), new_tree, candidate);
}

double water_score(const DomTree& old_tree, NodeId e, const DomTree& new_tree,
                   NodeId candidate, const WaterConfig& config) {
  return combine(water_features(old_tree, e, new_tree, candidate), config);
}

std::vector<WaterCandidate> water_rank(const DomTree& old_tree,
                                       const DomTree& new_tree, NodeId e,
                                       const WaterConfig& config) {
  check_node(old_tree, e, "old");
  config.validate();
  const Query q = make_query(old_tree, e);
  const std::string& tag = old_tree[e].tag;
  std::vector<WaterCandidate> out;
  for (const DomNode& n : new_tree.nodes()) {
    if (n.tag != tag) continue;
    if (config.max_candidates && out.size() >= config.max_candidates) break;
    out.push_back({n.id, combine(features(q, new_tree, n.id), config)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const WaterCandidate& a, const WaterCandidate& b) {
                     return a.score > b.score;
                   });
  return out;
}

std::optional<WaterCandidate> water_relocate(const DomTree& old_tree,
                                             const DomTree& new_tree, NodeId e,
                                             const WaterConfig& config) {
  auto ranked = water_rank(old_tree, new_tree, e, config);
  if (ranked.empty() || ranked.front().score < config.threshold) {
    return std::nullopt;
  }
  return ranked.front();
}

}  // namespace erratum

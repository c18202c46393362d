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

#include "erratum/repair.h"

#include <functional>
#include <mutex>

#include "erratum/error.h"
#include "erratum/xpath.h"

namespace erratum {
namespace {

// Evaluates each locator and hands the selected nodes to `relocate`.
std::vector<LocatorRepair> repair_each(
    const DomTree& old_tree, const std::vector<std::string>& locators,
    const std::function<std::vector<ElementRepair>(const std::vector<NodeId>&)>&
        relocate) {
  std::vector<LocatorRepair> out;
  out.reserve(locators.size());
  std::vector<std::vector<NodeId>> selected(locators.size());
  std::vector<NodeId> all;
  for (std::size_t i = 0; i < locators.size(); ++i) {
    LocatorRepair r;
    r.descriptor = locators[i];
    try {
      selected[i] = eval_xpath(old_tree, locators[i]);
      if (selected[i].empty()) r.error = "locator selects no element";
    } catch (const XPathError& e) {
      r.error = e.what();
    }
    if (!r.error) all.insert(all.end(), selected[i].begin(), selected[i].end());
    out.push_back(std::move(r));
  }
  if (all.empty()) return out;
  std::vector<ElementRepair> done = relocate(all);
  std::size_t k = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].error) continue;
    for (std::size_t j = 0; j < selected[i].size(); ++j) {
      out[i].elements.push_back(done[k++]);
    }
  }
  return out;
}

ElementRepair start(const DomTree& old_tree, NodeId node) {
  if (!old_tree.contains(node)) {
    throw InvalidNodeError("old tree has no node " + std::to_string(node));
  }
  ElementRepair r;
  r.old_node = node;
  r.old_xpath = absolute_xpath(old_tree, node);
  return r;
}

}  // namespace

std::string_view status_name(RepairStatus status) {
  return status == RepairStatus::kRelocated ? "relocated" : "no-match";
}

RepairEngine::RepairEngine(SftmConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::shared_ptr<const Matching> RepairEngine::matching(
    const DomTree& old_tree, const DomTree& new_tree) {
  Key key{old_tree.digest(), new_tree.digest(), old_tree.size(),
          new_tree.size()};
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // Computed outside the lock; a concurrent duplicate is discarded.
  auto m = std::make_shared<const Matching>(
      match_trees(old_tree, new_tree, config_));
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(m)).first->second;
}

std::size_t RepairEngine::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

void RepairEngine::clear_cache() {
  std::unique_lock lock(mutex_);
  cache_.clear();
}

std::vector<ElementRepair> RepairEngine::repair_nodes(
    const DomTree& old_tree, const DomTree& new_tree,
    const std::vector<NodeId>& nodes) {
  std::vector<ElementRepair> out;
  for (NodeId n : nodes) out.push_back(start(old_tree, n));
  if (nodes.empty()) return out;
  auto m = matching(old_tree, new_tree);
  for (ElementRepair& r : out) {
    NodeId partner = m->left_to_right[r.old_node];
    if (partner == kNoNode) continue;
    r.status = RepairStatus::kRelocated;
    r.new_node = partner;
    r.new_xpath = absolute_xpath(new_tree, partner);
    auto it = std::lower_bound(
        m->pairs.begin(), m->pairs.end(), r.old_node,
        [](const MatchedPair& p, NodeId left) { return p.left < left; });
    if (it != m->pairs.end() && it->left == r.old_node) r.score = it->score;
  }
  return out;
}

std::vector<LocatorRepair> RepairEngine::repair(
    const DomTree& old_tree, const DomTree& new_tree,
    const std::vector<std::string>& locators) {
  return repair_each(old_tree, locators, [&](const std::vector<NodeId>& n) {
    return repair_nodes(old_tree, new_tree, n);
  });
}

std::vector<ElementRepair> water_repair_nodes(const DomTree& old_tree,
                                              const DomTree& new_tree,
                                              const std::vector<NodeId>& nodes,
                                              const WaterConfig& config) {
  std::vector<ElementRepair> out;
  for (NodeId n : nodes) {
    ElementRepair r = start(old_tree, n);
    if (auto c = water_relocate(old_tree, new_tree, n, config)) {
      r.status = RepairStatus::kRelocated;
      r.new_node = c->node;
      r.new_xpath = absolute_xpath(new_tree, c->node);
      r.score = c->score;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LocatorRepair> water_repair(const DomTree& old_tree,
                                        const DomTree& new_tree,
                                        const std::vector<std::string>& locators,
                                        const WaterConfig& config) {
  return repair_each(old_tree, locators, [&](const std::vector<NodeId>& n) {
    return water_repair_nodes(old_tree, new_tree, n, config);
  });
}

nlohmann::ordered_json repair_report_json(
    std::string_view algorithm, const std::vector<LocatorRepair>& repairs) {
  nlohmann::ordered_json locs = nlohmann::ordered_json::array();
  for (const auto& r : repairs) {
    nlohmann::ordered_json elements = nlohmann::ordered_json::array();
    for (const auto& e : r.elements) {
      nlohmann::ordered_json j{{"oldXPath", e.old_xpath},
                               {"status", status_name(e.status)}};
      if (e.status == RepairStatus::kRelocated) j["newXPath"] = e.new_xpath;
      if (e.score) j["score"] = *e.score;
      elements.push_back(std::move(j));
    }
    nlohmann::ordered_json j{{"descriptor", r.descriptor},
                             {"elements", std::move(elements)}};
    if (r.error) j["error"] = *r.error;
    locs.push_back(std::move(j));
  }
  return {{"algorithm", algorithm}, {"locators", std::move(locs)}};
}

}  // namespace erratum

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

// Locator repair between two versions of a page.
//
// All locators of a page pair are served by a single tree matching, which
// is cached per (old tree, new tree, configuration).

#ifndef ERRATUM_REPAIR_H_
#define ERRATUM_REPAIR_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"
#include "erratum/sftm.h"
#include "erratum/water.h"

namespace erratum {

enum class RepairStatus { kRelocated, kNoMatch };

struct ElementRepair {
  NodeId old_node = kNoNode;
  std::string old_xpath;
  RepairStatus status = RepairStatus::kNoMatch;
  // Set iff status is kRelocated.
  NodeId new_node = kNoNode;
  std::string new_xpath;
  std::optional<double> score;
};

struct LocatorRepair {
  std::string descriptor;
  std::vector<ElementRepair> elements;
  // Set when the locator cannot be evaluated on the old tree or selects
  // nothing. `elements` is then empty.
  std::optional<std::string> error;
};

class RepairEngine {
 public:
  explicit RepairEngine(SftmConfig config = {});

  // Relocates every locator. Computes at most one matching per page pair.
  std::vector<LocatorRepair> repair(const DomTree& old_tree,
                                    const DomTree& new_tree,
                                    const std::vector<std::string>& locators);

  // Relocates single elements of old_tree.
  std::vector<ElementRepair> repair_nodes(const DomTree& old_tree,
                                          const DomTree& new_tree,
                                          const std::vector<NodeId>& nodes);

  // Cached matching for the pair. Safe to call from several threads.
  std::shared_ptr<const Matching> matching(const DomTree& old_tree,
                                           const DomTree& new_tree);

  const SftmConfig& config() const { return config_; }
  std::size_t cache_size() const;
  void clear_cache();

 private:
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::size_t,
                         std::size_t>;
  SftmConfig config_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Matching>> cache_;
};

// Same contract as RepairEngine::repair, element by element with WATER.
std::vector<LocatorRepair> water_repair(const DomTree& old_tree,
                                        const DomTree& new_tree,
                                        const std::vector<std::string>& locators,
                                        const WaterConfig& config = {});

std::vector<ElementRepair> water_repair_nodes(const DomTree& old_tree,
                                              const DomTree& new_tree,
                                              const std::vector<NodeId>& nodes,
                                              const WaterConfig& config = {});

// {algorithm, locators:[{descriptor, elements:[{oldXPath, status,
// newXPath?, score?}], error?}]}
nlohmann::ordered_json repair_report_json(
    std::string_view algorithm, const std::vector<LocatorRepair>& repairs);

std::string_view status_name(RepairStatus status);

}  // namespace erratum

#endif  // ERRATUM_REPAIR_H_

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

#include "erratum/tree_json.h"

#include <string>
#include <vector>

#include "erratum/error.h"

namespace erratum {

nlohmann::ordered_json tree_to_json(const DomTree& tree,
                                    bool include_signatures) {
  nlohmann::ordered_json out;
  out["root"] = tree.root();
  out["signatureAttr"] = tree.signature_attr();
  auto& nodes = out["nodes"];
  nodes = nlohmann::ordered_json::array();
  for (const DomNode& n : tree.nodes()) {
    nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
    for (const Attribute& a : n.attributes) attrs[a.name] = a.value;
    if (include_signatures && n.signature()) {
      attrs[tree.signature_attr()] = *n.signature();
    }
    nodes.push_back({{"id", n.id},
                     {"tag", n.tag},
                     {"attrs", std::move(attrs)},
                     {"text", n.own_text},
                     {"children", n.children}});
  }
  return out;
}

DomTree tree_from_json(const nlohmann::ordered_json& json) {
  try {
    std::string sig_attr = json.value("signatureAttr",
                                      std::string(kDefaultSignatureAttr));
    const auto& nodes = json.at("nodes");
    const auto count = static_cast<NodeId>(nodes.size());
    if (count == 0) throw ParseError("tree JSON has no nodes");
    NodeId root = json.value("root", 0);

    std::vector<const nlohmann::ordered_json*> by_id(count, nullptr);
    for (const auto& n : nodes) {
      NodeId id = n.at("id").get<NodeId>();
      if (id < 0 || id >= count || by_id[id]) {
        throw ParseError("tree JSON has invalid or duplicate id " +
                         std::to_string(id));
      }
      by_id[id] = &n;
    }
    if (root < 0 || root >= count) throw ParseError("tree JSON root invalid");

    DomTreeBuilder b(sig_attr);
    std::vector<NodeId> handle(count, kNoNode);
    std::vector<std::pair<NodeId, NodeId>> stack{{root, kNoNode}};
    std::size_t visited = 0;
    while (!stack.empty()) {
      auto [id, parent] = stack.back();
      stack.pop_back();
      if (handle[id] != kNoNode) {
        throw ParseError("tree JSON node " + std::to_string(id) +
                         " has several parents");
      }
      const auto& n = *by_id[id];
      std::vector<Attribute> attrs;
      std::optional<std::string> signature;
      if (n.contains("attrs")) {
        for (const auto& [k, v] : n.at("attrs").items()) {
          if (k == sig_attr) {
            signature = v.get<std::string>();
          } else {
            attrs.push_back({k, v.get<std::string>()});
          }
        }
      }
      handle[id] = b.add(parent, n.at("tag").get<std::string>(),
                         std::move(attrs), n.value("text", std::string()),
                         std::move(signature));
      ++visited;
      const auto& kids = n.value("children", std::vector<NodeId>{});
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        if (*it < 0 || *it >= count) {
          throw ParseError("tree JSON child id out of range");
        }
        stack.push_back({*it, handle[id]});
      }
    }
    if (visited != static_cast<std::size_t>(count)) {
      throw ParseError("tree JSON has nodes unreachable from the root");
    }
    return std::move(b).build();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed tree JSON: ") + e.what());
  }
}

}  // namespace erratum

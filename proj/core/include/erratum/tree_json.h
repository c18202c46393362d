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

// Canonical JSON form of a DomTree:
//   {"root": 0, "signatureAttr": "...",
//    "nodes": [{"id", "tag", "attrs": {..}, "text", "children": [..]}]}
// Signatures, when present, appear in attrs under signatureAttr.

#ifndef ERRATUM_TREE_JSON_H_
#define ERRATUM_TREE_JSON_H_

#include <nlohmann/json.hpp>

#include "erratum/dom.h"

namespace erratum {

// With include_signatures = false the signature attribute is left out.
nlohmann::ordered_json tree_to_json(const DomTree& tree,
                                    bool include_signatures = true);

// Throws ParseError on malformed documents (bad ids, cycles, several roots).
DomTree tree_from_json(const nlohmann::ordered_json& json);

}  // namespace erratum

#endif  // ERRATUM_TREE_JSON_H_

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

// Absolute XPath generation and evaluation of a small XPath subset.
//
// Supported: location paths made of child steps with a name test, each
// followed by any number of predicates of the form [k] or [@name="value"]
// (single or double quotes). Absolute paths start at a virtual document
// node whose only child is the tree root; relative paths are evaluated with
// the root element as context node.

#ifndef ERRATUM_XPATH_H_
#define ERRATUM_XPATH_H_

#include <string>
#include <string_view>
#include <vector>

#include "erratum/dom.h"

namespace erratum {

// /tag[k]/tag[k]/... from the root down to `node`, where k is the 1-based
// index among same-tag siblings. Throws InvalidNodeError.
std::string absolute_xpath(const DomTree& tree, NodeId node);

// Nodes selected by `locator`, in document order. Throws XPathSyntaxError
// for malformed input and UnsupportedXPathError for valid XPath outside the
// supported subset.
std::vector<NodeId> eval_xpath(const DomTree& tree, std::string_view locator);

}  // namespace erratum

#endif  // ERRATUM_XPATH_H_

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

#ifndef ERRATUM_TOKENIZE_H_
#define ERRATUM_TOKENIZE_H_

#include <string>
#include <vector>

#include "erratum/dom.h"

namespace erratum {

struct TokenizerConfig {
  // Adds whitespace-separated words of own_text to the label.
  bool include_text = false;
  // Adds the individual words of multi-word attribute values (class lists)
  // next to the whole value.
  bool split_multi_valued = true;
  // Attributes never tokenized. The tree's signature attribute is always
  // skipped as well.
  std::vector<std::string> ignored_attributes;
};

// Multiset of label tokens, in the order they were produced.
struct Label {
  std::vector<std::string> tokens;
};

// Tokens of a node: its tag, each attribute name, each trimmed attribute
// value and, for multi-word values, each word. Child elements do not
// contribute.
Label tokenize(const DomNode& node, const TokenizerConfig& config = {},
               std::string_view signature_attr = kDefaultSignatureAttr);

}  // namespace erratum

#endif  // ERRATUM_TOKENIZE_H_

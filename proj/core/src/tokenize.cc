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

#include "erratum/tokenize.h"

#include <algorithm>
#include <string_view>

namespace erratum {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename F>
void for_each_word(std::string_view s, F&& f) {
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) f(s.substr(start, i - start));
  }
}

}  // namespace

Label tokenize(const DomNode& node, const TokenizerConfig& config,
               std::string_view signature_attr) {
  Label label;
  label.tokens.push_back(node.tag);
  for (const Attribute& attr : node.attributes) {
    if (attr.name == signature_attr ||
        std::find(config.ignored_attributes.begin(),
                  config.ignored_attributes.end(),
                  attr.name) != config.ignored_attributes.end()) {
      continue;
    }
    label.tokens.push_back(attr.name);
    std::string_view value = trim(attr.value);
    if (value.empty()) continue;
    label.tokens.emplace_back(value);
    bool multi = std::any_of(value.begin(), value.end(), is_space);
    if (multi && config.split_multi_valued) {
      for_each_word(value, [&](std::string_view w) {
        label.tokens.emplace_back(w);
      });
    }
  }
  if (config.include_text) {
    for_each_word(node.own_text, [&](std::string_view w) {
      label.tokens.emplace_back(w);
    });
  }
  return label;
}

}  // namespace erratum

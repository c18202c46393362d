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

#ifndef ERRATUM_STRINGS_H_
#define ERRATUM_STRINGS_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace erratum {

// Byte-wise Levenshtein distance (unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein / max length; 1 for two empty strings.
double normalized_similarity(std::string_view a, std::string_view b);

// Jaccard index of two sorted, duplicate-free ranges; 1 when both are empty.
template <typename T>
double jaccard(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

}  // namespace erratum

#endif  // ERRATUM_STRINGS_H_

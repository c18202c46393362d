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

// Exhaustive reference for small matching instances.

#ifndef ERRATUM_TESTS_SFTM_ORACLE_H_
#define ERRATUM_TESTS_SFTM_ORACLE_H_

#include <algorithm>
#include <limits>
#include <vector>

#include "erratum/sftm.h"

namespace erratum::testing {

// Best value of sum(score - penalty) over all injective matchings using
// table pairs. Enumerates every subset of used right nodes, so the right
// tree must have at most 16 nodes.
inline double exhaustive_optimum(const SimilarityTable& table,
                                 double penalty) {
  const std::size_t nl = table.left_size();
  const std::size_t nr = table.right_size();
  const double kUnreached = -std::numeric_limits<double>::infinity();
  std::vector<double> dp(std::size_t{1} << nr, kUnreached);
  dp[0] = 0.0;
  for (std::size_t l = 0; l < nl; ++l) {
    std::vector<double> next = dp;  // leaving l unmatched
    auto [b, e] = table.row(static_cast<NodeId>(l));
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] == kUnreached) continue;
      for (auto* it = b; it != e; ++it) {
        std::size_t bit = std::size_t{1} << it->right;
        if (mask & bit) continue;
        next[mask | bit] =
            std::max(next[mask | bit], dp[mask] + it->score - penalty);
      }
    }
    dp = std::move(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

}  // namespace erratum::testing

#endif  // ERRATUM_TESTS_SFTM_ORACLE_H_

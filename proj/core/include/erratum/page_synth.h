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

// Synthetic web pages for corpora and benchmarks.
//
// Pages mimic common site templates: header with navigation and search,
// hero banner, card grids, article lists, tables, forms, sidebars,
// pagination and multi-column footers. Each site gets its own class naming
// style and vocabulary.

#ifndef ERRATUM_PAGE_SYNTH_H_
#define ERRATUM_PAGE_SYNTH_H_

#include <cstdint>
#include <string>

namespace erratum {

struct PageSynthConfig {
  // Approximate number of elements in the generated page.
  int target_nodes = 600;
};

// Deterministic HTML document for a seed.
std::string synthesize_page(std::uint64_t seed,
                            const PageSynthConfig& config = {});

}  // namespace erratum

#endif  // ERRATUM_PAGE_SYNTH_H_

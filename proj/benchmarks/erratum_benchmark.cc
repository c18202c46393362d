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

// Microbenchmarks for parsing, tree matching and relocation. Page sizes are
// element counts of synthetic pages.

#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "erratum/bench.h"
#include "erratum/dom.h"
#include "erratum/mutagen.h"
#include "erratum/page_synth.h"
#include "erratum/repair.h"
#include "erratum/sftm.h"
#include "erratum/water.h"

namespace erratum {
namespace {

const std::string& page_html(int nodes) {
  static std::map<int, std::string> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    it = cache.emplace(nodes, synthesize_page(77, {.target_nodes = nodes})).first;
  }
  return it->second;
}

struct Pair {
  DomTree left;
  DomTree right;
};

// A page and a 10% mixed mutant of it.
const Pair& page_pair(int nodes) {
  static std::map<int, Pair> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    DomTree left = assign_signatures(parse_html(page_html(nodes)));
    MutantRecord rec = mutate(left, 0.1, all_kinds(), 5);
    it = cache.emplace(nodes, Pair{left, rec.mutant}).first;
  }
  return it->second;
}

void BM_ParseHtml(benchmark::State& state) {
  const std::string& html = page_html(static_cast<int>(state.range(0)));
  std::size_t size = 0;
  for (auto _ : state) {
    DomTree t = parse_html(html);
    size = t.size();
    benchmark::DoNotOptimize(t);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * html.size());
  state.counters["nodes"] = static_cast<double>(size);
}
BENCHMARK(BM_ParseHtml)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMicrosecond);

void BM_InitialSimilarity(benchmark::State& state) {
  const Pair& p = page_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(initial_similarity(p.left, p.right));
  }
}
BENCHMARK(BM_InitialSimilarity)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const Pair& p = page_pair(static_cast<int>(state.range(0)));
  SimilarityTable initial = initial_similarity(p.left, p.right);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(initial, p.left, p.right));
  }
  state.counters["pairs"] = static_cast<double>(initial.size());
}
BENCHMARK(BM_Propagate)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Optimize(benchmark::State& state) {
  const Pair& p = page_pair(static_cast<int>(state.range(0)));
  SimilarityTable table = propagate(initial_similarity(p.left, p.right), p.left, p.right);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize(table, p.left, p.right));
  }
}
BENCHMARK(BM_Optimize)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_MatchTrees(benchmark::State& state) {
  const Pair& p = page_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_trees(p.left, p.right));
  }
  state.counters["nodes"] = static_cast<double>(p.left.size());
}
BENCHMARK(BM_MatchTrees)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

// One WATER relocation of a clickable element.
void BM_WaterRelocate(benchmark::State& state) {
  const Pair& p = page_pair(static_cast<int>(state.range(0)));
  std::vector<NodeId> targets = select_targets(p.left, 15, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(water_relocate(p.left, p.right, targets[i]));
    i = (i + 1) % targets.size();
  }
}
BENCHMARK(BM_WaterRelocate)->Arg(250)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

// Repairing k locators: ERRATUM pays one matching, WATER one scan per locator.
void BM_RepairErratum(benchmark::State& state) {
  const Pair& p = page_pair(1000);
  std::vector<NodeId> targets =
      select_targets(p.left, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    RepairEngine engine;
    benchmark::DoNotOptimize(engine.repair_nodes(p.left, p.right, targets));
  }
}
BENCHMARK(BM_RepairErratum)->Arg(1)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_RepairWater(benchmark::State& state) {
  const Pair& p = page_pair(1000);
  std::vector<NodeId> targets =
      select_targets(p.left, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(water_repair_nodes(p.left, p.right, targets));
  }
}
BENCHMARK(BM_RepairWater)->Arg(1)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace erratum

BENCHMARK_MAIN();

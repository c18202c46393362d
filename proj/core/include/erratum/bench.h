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

// Accuracy and timing benchmark of ERRATUM against WATER on mutant pairs.

#ifndef ERRATUM_BENCH_H_
#define ERRATUM_BENCH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"
#include "erratum/mutagen.h"
#include "erratum/sftm.h"
#include "erratum/water.h"

namespace erratum {

struct ClickableConfig {
  std::vector<std::string> tags = {"a", "button"};
  // <input> elements count when their type is one of these.
  std::vector<std::string> input_types = {"submit", "button"};
  bool onclick = true;
};

bool is_clickable(const DomNode& node, const ClickableConfig& config = {});

// Up to k clickable nodes drawn uniformly without replacement, in draw
// order. Deterministic for a seed.
std::vector<NodeId> select_targets(const DomTree& tree, std::size_t k = 15,
                                   std::uint64_t seed = 0,
                                   const ClickableConfig& config = {});

enum class Outcome { kCorrect = 0, kMismatch = 1, kNoMatch = 2 };

std::string_view outcome_name(Outcome outcome);

// `truth` is kNoNode when the element no longer exists; predicting no
// node is then correct.
Outcome classify(std::optional<NodeId> predicted, NodeId truth);

enum class Algorithm { kErratum, kWater };

std::string_view algorithm_name(Algorithm algorithm);
// Throws ConfigError for unknown names.
Algorithm parse_algorithm(std::string_view name);

struct BenchCase {
  std::string site;
  int mutant = 0;
  MutantRecord record;
};

struct BenchConfig {
  std::vector<Algorithm> algorithms = {Algorithm::kErratum, Algorithm::kWater};
  std::size_t targets_per_page = 15;
  std::uint64_t seed = 0;
  SftmConfig sftm;
  WaterConfig water;
  ClickableConfig clickable;
  // Worker threads; trials are independent.
  int jobs = 1;
  // Fills Trial::time_ms. Off by default so outputs are reproducible.
  bool wallclock = false;
};

struct Trial {
  Algorithm algorithm;
  std::string site;
  int mutant = 0;
  // Absolute XPath of the target in the original page.
  std::string element;
  Outcome label;
  std::optional<double> score;
  // ERRATUM computes one matching per pair; its cost is spread evenly over
  // the pair's targets.
  std::optional<double> time_ms;
  std::size_t dom_size = 0;
  double ratio = 0.0;
  // Sorted distinct kind names joined by '+'.
  std::string kinds;
  std::string error;
};

struct OutcomeSummary {
  std::array<std::size_t, 3> counts{};
  std::size_t trials = 0;

  double ratio(Outcome o) const;
  // Half-width of the 95% normal-approximation interval.
  double ci95(Outcome o) const;
  // Mismatch plus no-match.
  double error_rate() const;
  void add(Outcome o);
};

struct BinSummary {
  std::string label;
  std::map<Algorithm, OutcomeSummary> by_algorithm;
};

struct SkippedPair {
  std::string site;
  int mutant;
  std::string reason;
};

struct BenchReport {
  std::vector<Trial> trials;
  std::map<Algorithm, OutcomeSummary> overall;
  // Quintiles of the dataset's original DOM sizes.
  std::vector<BinSummary> by_size;
  // Applied mutation ratio: (0,5%], (5,10%], (10,20%], >20%.
  std::vector<BinSummary> by_ratio;
  // Mutation category of single-category mutants; others are "mixed".
  std::vector<BinSummary> by_category;
  std::vector<BinSummary> by_kind;
  std::vector<SkippedPair> skipped;
};

// Runs every algorithm on every selected target. Algorithm failures on a
// pair are recorded as no-match trials with an error note. Throws
// ConfigError on an empty dataset.
BenchReport run_benchmark(const std::vector<BenchCase>& dataset,
                          const BenchConfig& config = {});

// Index of the ratio bin for an applied ratio.
std::size_t ratio_bin(double ratio);
inline constexpr std::array<std::string_view, 4> kRatioBins = {
    "0-5%", "5-10%", "10-20%", ">20%"};

// metrics.csv: algorithm,site,mutant,element,label,score,timeMs,domSize,
// ratio,kinds,error
void write_metrics_csv(const BenchReport& report, std::ostream& out);
nlohmann::ordered_json report_to_json(const BenchReport& report);
// accuracy_by_size.csv, accuracy_by_ratio.csv, accuracy_by_category.csv,
// accuracy_by_kind.csv.
void write_plot_series(const BenchReport& report,
                       const std::filesystem::path& dir);

struct TimingPoint {
  std::size_t locators;
  double median_ms;
  std::vector<double> samples_ms;
};

struct TimingSeries {
  std::vector<TimingPoint> points;
  // Least-squares fit of median time against locator count.
  double alpha_ms = 0.0;
  double intercept_ms = 0.0;
  // Standard error of alpha.
  double alpha_stderr_ms = 0.0;
};

struct TimingReport {
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::map<Algorithm, TimingSeries> series;
  // Smallest count at which ERRATUM is faster than WATER.
  std::optional<std::size_t> crossover;
};

struct TimingConfig {
  std::vector<std::size_t> locator_counts = {1, 2, 3, 4, 5, 6, 8, 10, 12, 15};
  int repeats = 5;
  std::uint64_t seed = 0;
  SftmConfig sftm;
  WaterConfig water;
  ClickableConfig clickable;
};

// Wall-clock repair time per locator count, median over repeats. Locators
// target distinct clickable nodes of `left`, topped up with random other
// nodes when the page has too few. ERRATUM's cache is cleared before every
// run. Throws ConfigError for unsorted or empty counts.
TimingReport measure_timing(const DomTree& left, const DomTree& right,
                            const TimingConfig& config = {});

nlohmann::ordered_json timing_to_json(const TimingReport& report);
// locators,algorithm,medianMs
void write_timing_csv(const TimingReport& report, std::ostream& out);

}  // namespace erratum

#endif  // ERRATUM_BENCH_H_

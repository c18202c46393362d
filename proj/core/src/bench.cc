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

#include "erratum/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include "erratum/error.h"
#include "erratum/random.h"
#include "erratum/repair.h"
#include "erratum/xpath.h"

namespace erratum {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string kinds_of(const MutantRecord& r) {
  std::set<std::string_view> names;
  for (const auto& op : r.ops) names.insert(kind_name(op.kind));
  std::string out;
  for (auto n : names) {
    if (!out.empty()) out += '+';
    out += n;
  }
  return out;
}

std::string category_of(const MutantRecord& r) {
  std::set<MutationCategory> cats;
  for (const auto& op : r.ops) cats.insert(kind_category(op.kind));
  if (cats.empty()) return "none";
  if (cats.size() > 1) return "mixed";
  return std::string(category_name(*cats.begin()));
}

std::vector<Trial> run_case(const BenchCase& c, std::size_t index,
                            const BenchConfig& config,
                            std::optional<SkippedPair>& skipped) {
  const MutantRecord& r = c.record;
  std::vector<NodeId> targets =
      select_targets(r.original, config.targets_per_page,
                     derive_seed(config.seed, index), config.clickable);
  if (targets.empty()) {
    skipped = SkippedPair{c.site, c.mutant, "no clickable element"};
    return {};
  }
  std::vector<NodeId> truth;
  std::vector<std::string> xpaths;
  for (NodeId t : targets) {
    auto it = r.ground_truth.find(*r.original[t].signature());
    truth.push_back(it == r.ground_truth.end() ? kNoNode : it->second);
    xpaths.push_back(absolute_xpath(r.original, t));
  }

  Trial base;
  base.site = c.site;
  base.mutant = c.mutant;
  base.dom_size = r.original.size();
  base.ratio = r.ratio;
  base.kinds = kinds_of(r);

  std::vector<Trial> out;
  for (Algorithm alg : config.algorithms) {
    std::vector<Trial> trials(targets.size(), base);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      trials[i].algorithm = alg;
      trials[i].element = xpaths[i];
      trials[i].label = Outcome::kNoMatch;
    }
    if (alg == Algorithm::kErratum) {
      auto t0 = Clock::now();
      try {
        RepairEngine engine(config.sftm);
        auto rep = engine.repair_nodes(r.original, r.mutant, targets);
        double each = ms_since(t0) / static_cast<double>(targets.size());
        for (std::size_t i = 0; i < targets.size(); ++i) {
          std::optional<NodeId> p;
          if (rep[i].status == RepairStatus::kRelocated) p = rep[i].new_node;
          trials[i].label = classify(p, truth[i]);
          trials[i].score = rep[i].score;
          if (config.wallclock) trials[i].time_ms = each;
        }
      } catch (const std::exception& e) {
        for (auto& t : trials) t.error = e.what();
      }
    } else {
      for (std::size_t i = 0; i < targets.size(); ++i) {
        auto t0 = Clock::now();
        try {
          auto cand =
              water_relocate(r.original, r.mutant, targets[i], config.water);
          std::optional<NodeId> p;
          if (cand) {
            p = cand->node;
            trials[i].score = cand->score;
          }
          trials[i].label = classify(p, truth[i]);
        } catch (const std::exception& e) {
          trials[i].error = e.what();
        }
        if (config.wallclock) trials[i].time_ms = ms_since(t0);
      }
    }
    out.insert(out.end(), trials.begin(), trials.end());
  }
  return out;
}

std::vector<BinSummary> summarize_by(
    const std::vector<Trial>& trials, const std::vector<std::string>& labels,
    const std::function<std::size_t(const Trial&)>& bin_of) {
  std::vector<BinSummary> bins(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) bins[i].label = labels[i];
  for (const Trial& t : trials) {
    bins[bin_of(t)].by_algorithm[t.algorithm].add(t.label);
  }
  return bins;
}

nlohmann::ordered_json summary_json(const OutcomeSummary& s) {
  nlohmann::ordered_json j{{"trials", s.trials}};
  for (Outcome o : {Outcome::kCorrect, Outcome::kMismatch, Outcome::kNoMatch}) {
    std::string name(outcome_name(o));
    j[name] = {{"count", s.counts[static_cast<int>(o)]},
               {"ratio", s.ratio(o)},
               {"ci95", s.ci95(o)}};
  }
  return j;
}

nlohmann::ordered_json bins_json(const std::vector<BinSummary>& bins) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& b : bins) {
    nlohmann::ordered_json algs = nlohmann::ordered_json::object();
    for (const auto& [alg, s] : b.by_algorithm) {
      algs[std::string(algorithm_name(alg))] = summary_json(s);
    }
    out.push_back({{"bin", b.label}, {"algorithms", algs}});
  }
  return out;
}

void write_bins_csv(const std::vector<BinSummary>& bins,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "bin,algorithm,trials,correct,mismatch,noMatch,errorRate\n";
  for (const auto& b : bins) {
    for (const auto& [alg, s] : b.by_algorithm) {
      out << csv_field(b.label) << ',' << algorithm_name(alg) << ','
          << s.trials << ',' << fixed(s.ratio(Outcome::kCorrect)) << ','
          << fixed(s.ratio(Outcome::kMismatch)) << ','
          << fixed(s.ratio(Outcome::kNoMatch)) << ','
          << fixed(s.error_rate()) << '\n';
    }
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

void fit(TimingSeries& s) {
  const double n = static_cast<double>(s.points.size());
  double mx = 0, my = 0;
  for (const auto& p : s.points) {
    mx += static_cast<double>(p.locators);
    my += p.median_ms;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& p : s.points) {
    double dx = static_cast<double>(p.locators) - mx;
    sxx += dx * dx;
    sxy += dx * (p.median_ms - my);
  }
  s.alpha_ms = sxx > 0 ? sxy / sxx : 0.0;
  s.intercept_ms = my - s.alpha_ms * mx;
  if (s.points.size() > 2 && sxx > 0) {
    double sse = 0;
    for (const auto& p : s.points) {
      double e = p.median_ms -
                 (s.intercept_ms + s.alpha_ms * static_cast<double>(p.locators));
      sse += e * e;
    }
    s.alpha_stderr_ms = std::sqrt(sse / (n - 2) / sxx);
  }
}

}  // namespace

bool is_clickable(const DomNode& node, const ClickableConfig& config) {
  if (std::find(config.tags.begin(), config.tags.end(), node.tag) !=
      config.tags.end()) {
    return true;
  }
  if (node.tag == "input") {
    if (const std::string* type = node.attribute("type")) {
      std::string t = *type;
      std::transform(t.begin(), t.end(), t.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (std::find(config.input_types.begin(), config.input_types.end(), t) !=
          config.input_types.end()) {
        return true;
      }
    }
  }
  return config.onclick && node.attribute("onclick") != nullptr;
}

std::vector<NodeId> select_targets(const DomTree& tree, std::size_t k,
                                   std::uint64_t seed,
                                   const ClickableConfig& config) {
  std::vector<NodeId> clickable;
  for (const DomNode& n : tree.nodes()) {
    if (is_clickable(n, config)) clickable.push_back(n.id);
  }
  Rng rng(seed);
  return sample(std::move(clickable), k, rng);
}

std::string_view outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kMismatch: return "mismatch";
    case Outcome::kNoMatch: return "no-match";
  }
  return "unknown";
}

Outcome classify(std::optional<NodeId> predicted, NodeId truth) {
  if (truth == kNoNode) return predicted ? Outcome::kMismatch : Outcome::kCorrect;
  if (!predicted) return Outcome::kNoMatch;
  return *predicted == truth ? Outcome::kCorrect : Outcome::kMismatch;
}

std::string_view algorithm_name(Algorithm algorithm) {
  return algorithm == Algorithm::kErratum ? "erratum" : "water";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "erratum") return Algorithm::kErratum;
  if (name == "water") return Algorithm::kWater;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

double OutcomeSummary::ratio(Outcome o) const {
  return trials ? static_cast<double>(counts[static_cast<int>(o)]) /
                      static_cast<double>(trials)
                : 0.0;
}

double OutcomeSummary::ci95(Outcome o) const {
  if (!trials) return 0.0;
  double p = ratio(o);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double OutcomeSummary::error_rate() const {
  return ratio(Outcome::kMismatch) + ratio(Outcome::kNoMatch);
}

void OutcomeSummary::add(Outcome o) {
  ++counts[static_cast<int>(o)];
  ++trials;
}

std::size_t ratio_bin(double ratio) {
  if (ratio <= 0.05) return 0;
  if (ratio <= 0.10) return 1;
  if (ratio <= 0.20) return 2;
  return 3;
}

BenchReport run_benchmark(const std::vector<BenchCase>& dataset,
                          const BenchConfig& config) {
  if (dataset.empty()) throw ConfigError("empty benchmark dataset");
  if (config.algorithms.empty()) throw ConfigError("no algorithm selected");
  if (config.jobs < 1) throw ConfigError("jobs must be positive");
  config.sftm.validate();
  config.water.validate();

  std::vector<std::vector<Trial>> per_case(dataset.size());
  std::vector<std::optional<SkippedPair>> skipped(dataset.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < dataset.size();) {
      per_case[i] = run_case(dataset[i], i, config, skipped[i]);
    }
  };
  std::vector<std::thread> threads;
  for (int j = 1; j < config.jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  BenchReport report;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (auto& t : per_case[i]) report.trials.push_back(std::move(t));
    if (skipped[i]) report.skipped.push_back(*skipped[i]);
  }
  for (const Trial& t : report.trials) report.overall[t.algorithm].add(t.label);

  // Quintile edges over pairs, not trials.
  std::vector<std::size_t> sizes;
  for (const auto& c : dataset) sizes.push_back(c.record.original.size());
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::size_t> upper;
  for (int q = 1; q <= 5; ++q) {
    std::size_t idx = (sizes.size() * q + 4) / 5;
    upper.push_back(sizes[std::min(sizes.size(), std::max<std::size_t>(idx, 1)) - 1]);
  }
  upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
  std::vector<std::string> size_labels;
  std::size_t lo = sizes.front();
  for (std::size_t hi : upper) {
    size_labels.push_back(std::to_string(lo) + "-" + std::to_string(hi));
    lo = hi + 1;
  }
  report.by_size = summarize_by(report.trials, size_labels, [&](const Trial& t) {
    return static_cast<std::size_t>(
        std::lower_bound(upper.begin(), upper.end(), t.dom_size) - upper.begin());
  });

  report.by_ratio = summarize_by(
      report.trials, {kRatioBins.begin(), kRatioBins.end()},
      [](const Trial& t) { return ratio_bin(t.ratio); });

  // Category and kind labels are looked up per trial through its case.
  std::vector<std::string> cat_labels{"structure", "attribute", "content",
                                      "mixed", "none"};
  std::map<std::pair<std::string, int>, std::string> case_cat;
  for (const auto& c : dataset) {
    case_cat[{c.site, c.mutant}] = category_of(c.record);
  }
  report.by_category =
      summarize_by(report.trials, cat_labels, [&](const Trial& t) {
        const std::string& cat = case_cat.at({t.site, t.mutant});
        return static_cast<std::size_t>(
            std::find(cat_labels.begin(), cat_labels.end(), cat) -
            cat_labels.begin());
      });
  report.by_category.erase(
      std::remove_if(report.by_category.begin(), report.by_category.end(),
                     [](const BinSummary& b) { return b.by_algorithm.empty(); }),
      report.by_category.end());

  std::vector<std::string> kind_labels;
  for (const Trial& t : report.trials) kind_labels.push_back(t.kinds);
  std::sort(kind_labels.begin(), kind_labels.end());
  kind_labels.erase(std::unique(kind_labels.begin(), kind_labels.end()),
                    kind_labels.end());
  report.by_kind = summarize_by(report.trials, kind_labels, [&](const Trial& t) {
    return static_cast<std::size_t>(
        std::lower_bound(kind_labels.begin(), kind_labels.end(), t.kinds) -
        kind_labels.begin());
  });
  return report;
}

void write_metrics_csv(const BenchReport& report, std::ostream& out) {
  out << "algorithm,site,mutant,element,label,score,timeMs,domSize,ratio,"
         "kinds,error\n";
  for (const Trial& t : report.trials) {
    out << algorithm_name(t.algorithm) << ',' << csv_field(t.site) << ','
        << t.mutant << ',' << csv_field(t.element) << ','
        << outcome_name(t.label) << ','
        << (t.score ? fixed(*t.score) : std::string()) << ','
        << (t.time_ms ? fixed(*t.time_ms, 3) : std::string()) << ','
        << t.dom_size << ',' << fixed(t.ratio) << ',' << csv_field(t.kinds)
        << ',' << csv_field(t.error) << '\n';
  }
}

nlohmann::ordered_json report_to_json(const BenchReport& report) {
  nlohmann::ordered_json overall = nlohmann::ordered_json::object();
  for (const auto& [alg, s] : report.overall) {
    overall[std::string(algorithm_name(alg))] = summary_json(s);
  }
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const auto& s : report.skipped) {
    skipped.push_back(
        {{"site", s.site}, {"mutant", s.mutant}, {"reason", s.reason}});
  }
  return {{"trials", report.trials.size()},
          {"overall", overall},
          {"bySize", bins_json(report.by_size)},
          {"byRatio", bins_json(report.by_ratio)},
          {"byCategory", bins_json(report.by_category)},
          {"byKind", bins_json(report.by_kind)},
          {"skipped", skipped}};
}

void write_plot_series(const BenchReport& report,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_bins_csv(report.by_size, dir / "accuracy_by_size.csv");
  write_bins_csv(report.by_ratio, dir / "accuracy_by_ratio.csv");
  write_bins_csv(report.by_category, dir / "accuracy_by_category.csv");
  write_bins_csv(report.by_kind, dir / "accuracy_by_kind.csv");
}

TimingReport measure_timing(const DomTree& left, const DomTree& right,
                            const TimingConfig& config) {
  const auto& counts = config.locator_counts;
  if (counts.empty() || !std::is_sorted(counts.begin(), counts.end()) ||
      counts.front() == 0) {
    throw ConfigError("locator counts must be positive and ascending");
  }
  if (config.repeats < 1) throw ConfigError("repeats must be positive");
  if (counts.back() > left.size()) {
    throw ConfigError("more locators than nodes in the old tree");
  }
  std::vector<NodeId> clickable, rest;
  for (const DomNode& n : left.nodes()) {
    (is_clickable(n, config.clickable) ? clickable : rest).push_back(n.id);
  }
  Rng rng(config.seed);
  std::vector<NodeId> nodes = sample(std::move(clickable), counts.back(), rng);
  if (nodes.size() < counts.back()) {
    for (NodeId n : sample(std::move(rest), counts.back() - nodes.size(), rng)) {
      nodes.push_back(n);
    }
  }
  std::vector<std::string> locators;
  for (NodeId n : nodes) locators.push_back(absolute_xpath(left, n));

  RepairEngine engine(config.sftm);
  auto run = [&](Algorithm alg, std::size_t k) {
    std::vector<std::string> subset(locators.begin(), locators.begin() + k);
    engine.clear_cache();
    auto t0 = Clock::now();
    if (alg == Algorithm::kErratum) {
      engine.repair(left, right, subset);
    } else {
      water_repair(left, right, subset, config.water);
    }
    return ms_since(t0);
  };
  // Warm-up.
  run(Algorithm::kErratum, 1);
  run(Algorithm::kWater, 1);

  TimingReport report;
  report.left_size = left.size();
  report.right_size = right.size();
  for (Algorithm alg : {Algorithm::kErratum, Algorithm::kWater}) {
    report.series[alg].points.reserve(counts.size());
  }
  // Every repeat sweeps all counts in a fresh random order, so slow drift
  // of the machine does not masquerade as a per-locator cost.
  std::vector<std::map<Algorithm, std::vector<double>>> samples(counts.size());
  std::vector<std::size_t> order(counts.size());
  for (int r = 0; r < config.repeats; ++r) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(order, rng);
    for (std::size_t i : order) {
      for (Algorithm alg : {Algorithm::kErratum, Algorithm::kWater}) {
        samples[i][alg].push_back(run(alg, counts[i]));
      }
    }
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (auto& [alg, s] : samples[i]) {
      report.series[alg].points.push_back({counts[i], median(s), s});
    }
  }
  for (auto& [alg, s] : report.series) fit(s);
  const auto& e = report.series[Algorithm::kErratum].points;
  const auto& w = report.series[Algorithm::kWater].points;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (e[i].median_ms < w[i].median_ms) {
      report.crossover = counts[i];
      break;
    }
  }
  return report;
}

nlohmann::ordered_json timing_to_json(const TimingReport& report) {
  nlohmann::ordered_json series = nlohmann::ordered_json::object();
  for (const auto& [alg, s] : report.series) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : s.points) {
      pts.push_back({{"locators", p.locators},
                     {"medianMs", p.median_ms},
                     {"samplesMs", p.samples_ms}});
    }
    series[std::string(algorithm_name(alg))] = {
        {"alphaMs", s.alpha_ms},
        {"alphaStderrMs", s.alpha_stderr_ms},
        {"interceptMs", s.intercept_ms},
        {"points", pts}};
  }
  return {{"leftSize", report.left_size},
          {"rightSize", report.right_size},
          {"series", series},
          {"crossover", report.crossover ? nlohmann::ordered_json(*report.crossover)
                                         : nlohmann::ordered_json(nullptr)}};
}

void write_timing_csv(const TimingReport& report, std::ostream& out) {
  out << "locators,algorithm,medianMs\n";
  for (const auto& [alg, s] : report.series) {
    for (const auto& p : s.points) {
      out << p.locators << ',' << algorithm_name(alg) << ','
          << fixed(p.median_ms, 3) << '\n';
    }
  }
}

}  // namespace erratum

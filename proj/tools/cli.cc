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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "erratum/bench.h"
#include "erratum/corpus.h"
#include "erratum/error.h"
#include "erratum/mutagen.h"
#include "erratum/repair.h"
#include "erratum/sftm.h"
#include "erratum/water.h"
#include "erratum/wayback.h"
#include "erratum/xpath.h"

namespace erratum::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Reported with their own prefix and exit code 1.
struct MissingFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidLocator : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw MissingFile(p.string());
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MissingFile(p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out.flush()) throw Error("cannot write " + p.string());
}

DomTree load_tree(const fs::path& p) {
  const std::string html = read_file(p);
  try {
    return parse_html(sanitize_utf8(html));
  } catch (const ParseError& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

void emit(const std::string& data, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    write_file(path, data);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Timestamp parse_date(const std::string& s) {
  std::string digits;
  for (char c : s) {
    if (c != '-') digits += c;
  }
  try {
    return parse_timestamp(digits);
  } catch (const ResponseFormatError&) {
    throw ConfigError("bad date '" + s + "', expected YYYY-MM-DD");
  }
}

std::uint64_t parse_seed(const std::string& s, const std::string& source) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw MalformedConfig(source + ": seed must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

// --- configuration -----------------------------------------------------------
//
// Values come from a JSON document (--config or ERRATUM_CONFIG), patched by
// --set key.path=value, and then by dedicated flags.

struct Settings {
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  SftmConfig sftm;
  WaterConfig water;
  DatasetConfig dataset;
  SyntheticSourceConfig sources;
  std::size_t targets = 15;
  std::vector<Algorithm> algorithms = {Algorithm::kErratum, Algorithm::kWater};
  int timing_repeats = 5;
  std::vector<std::size_t> locator_counts = TimingConfig{}.locator_counts;
  DateRange range = WaybackDatasetConfig{}.range;
  PairConfig pairs;
  int min_interval_ms = 1000;
  int max_attempts = WaybackConfig{}.max_attempts;
};

void check_keys(const Json& j, const std::string& where, const std::set<std::string>& keys) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) {
      throw ConfigError("unknown config key '" + (where.empty() ? k : where + "." + k) + "'");
    }
  }
}

Settings resolve(const Json& doc) {
  Settings s;
  check_keys(doc, "", {"seed", "jobs", "sftm", "water", "dataset", "bench", "timing", "wayback"});
  if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("jobs")) s.jobs = doc["jobs"].get<int>();
  if (doc.contains("sftm")) s.sftm = config_from_json(doc["sftm"]);
  if (doc.contains("water")) s.water = water_config_from_json(doc["water"]);
  if (doc.contains("dataset")) {
    const Json& d = doc["dataset"];
    check_keys(d, "dataset", {"pages", "pageSeed", "minNodes", "stepNodes", "mutantsPerPage",
                              "minRatio", "maxRatio", "kinds", "constrained"});
    s.sources.pages = d.value("pages", s.sources.pages);
    s.sources.seed = d.value("pageSeed", s.sources.seed);
    s.sources.min_nodes = d.value("minNodes", s.sources.min_nodes);
    s.sources.step_nodes = d.value("stepNodes", s.sources.step_nodes);
    s.dataset.mutants_per_page = d.value("mutantsPerPage", s.dataset.mutants_per_page);
    s.dataset.min_ratio = d.value("minRatio", s.dataset.min_ratio);
    s.dataset.max_ratio = d.value("maxRatio", s.dataset.max_ratio);
    if (d.contains("kinds")) s.dataset.kinds = parse_kinds(d["kinds"].get<std::string>());
    s.dataset.constrained = d.value("constrained", s.dataset.constrained);
  }
  if (doc.contains("bench")) {
    const Json& b = doc["bench"];
    check_keys(b, "bench", {"targetsPerPage", "algorithms"});
    s.targets = b.value("targetsPerPage", s.targets);
    if (b.contains("algorithms")) {
      s.algorithms.clear();
      for (const auto& a : b["algorithms"]) s.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
  }
  if (doc.contains("timing")) {
    const Json& t = doc["timing"];
    check_keys(t, "timing", {"repeats", "locatorCounts"});
    s.timing_repeats = t.value("repeats", s.timing_repeats);
    s.locator_counts = t.value("locatorCounts", s.locator_counts);
  }
  if (doc.contains("wayback")) {
    const Json& w = doc["wayback"];
    check_keys(w, "wayback", {"from", "to", "gapDays", "tolerance", "maxPairs",
                              "minIntervalMs", "maxAttempts"});
    if (w.contains("from")) s.range.from = parse_date(w["from"].get<std::string>());
    if (w.contains("to")) s.range.to = parse_date(w["to"].get<std::string>());
    s.pairs.gap_days = w.value("gapDays", s.pairs.gap_days);
    s.pairs.tolerance = w.value("tolerance", s.pairs.tolerance);
    s.pairs.max_pairs = w.value("maxPairs", s.pairs.max_pairs);
    s.min_interval_ms = w.value("minIntervalMs", s.min_interval_ms);
    s.max_attempts = w.value("maxAttempts", s.max_attempts);
  }
  return s;
}

// "sftm.tokenizer.includeText=true". The value is JSON when it parses as
// JSON, a plain string otherwise.
void apply_assignment(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw MalformedConfig("--set expects key=value, got '" + assignment + "'");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  Json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw MalformedConfig("bad --set key '" + path + "'");
    if (node->is_null()) *node = Json::object();
    if (!node->is_object()) throw MalformedConfig("--set " + path + ": not an object");
    node = &(*node)[parts[i]];
  }
  *node = value;
}

struct Common {
  std::string config_path;
  std::string seed;
  std::vector<std::string> sets;
  int jobs = 0;
  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
};

Settings load_settings(const Common& c) {
  Json doc = Json::object();
  std::string path = c.config_path;
  if (!c.config_opt->count()) {
    if (const char* env = std::getenv("ERRATUM_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) {
    const std::string text = read_file(path);
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw MalformedConfig(path + ": " + e.what());
    }
    if (!doc.is_object()) throw MalformedConfig(path + ": top level must be an object");
  }
  for (const auto& a : c.sets) apply_assignment(doc, a);
  Settings s;
  try {
    s = resolve(doc);
  } catch (const Json::exception& e) {
    throw MalformedConfig(e.what());
  } catch (const ConfigError& e) {
    throw MalformedConfig(e.what());
  } catch (const MutationError& e) {
    throw MalformedConfig(e.what());
  }
  // Seed: flag, then ERRATUM_SEED, then the config document.
  if (c.seed_opt->count()) {
    s.seed = parse_seed(c.seed, "--seed");
  } else if (const char* env = std::getenv("ERRATUM_SEED"); env && *env) {
    s.seed = parse_seed(env, "ERRATUM_SEED");
  }
  if (c.jobs_opt->count()) s.jobs = c.jobs;
  if (s.jobs && *s.jobs < 1) throw MalformedConfig("jobs must be at least 1");
  return s;
}

// --- subcommands -------------------------------------------------------------

struct MatchArgs {
  std::string old_path, new_path, output;
};

void do_match(const Settings& s, const MatchArgs& a, std::ostream& out) {
  SftmConfig config = s.sftm;
  if (s.seed) config.seed = *s.seed;
  DomTree left = load_tree(a.old_path);
  DomTree right = load_tree(a.new_path);
  Matching m = match_trees(left, right, config);
  emit(matching_to_json(m).dump(2) + "\n", a.output, out);
}

struct RepairArgs {
  std::string old_path, new_path, output;
  std::vector<std::string> locators;
  std::string algo = "erratum";
};

void do_repair(const Settings& s, const RepairArgs& a, std::ostream& out) {
  const Algorithm algo = parse_algorithm(a.algo);
  DomTree left = load_tree(a.old_path);
  DomTree right = load_tree(a.new_path);
  for (const auto& loc : a.locators) {
    try {
      eval_xpath(left, loc);
    } catch (const XPathError& e) {
      throw InvalidLocator("'" + loc + "': " + e.what());
    }
  }
  std::vector<LocatorRepair> repairs;
  if (algo == Algorithm::kErratum) {
    SftmConfig config = s.sftm;
    if (s.seed) config.seed = *s.seed;
    RepairEngine engine(config);
    repairs = engine.repair(left, right, a.locators);
  } else {
    repairs = water_repair(left, right, a.locators, s.water);
  }
  emit(repair_report_json(algorithm_name(algo), repairs).dump(2) + "\n", a.output, out);
}

struct MutateArgs {
  std::string page, output, kinds = "all";
  double ratio = 0.0;
};

void do_mutate(const Settings& s, const MutateArgs& a, std::ostream& out) {
  DomTree tree = load_tree(a.page);
  const bool is_signed = std::all_of(tree.nodes().begin(), tree.nodes().end(),
                                     [](const DomNode& n) { return n.signature().has_value(); });
  if (!is_signed) tree = assign_signatures(tree);
  MutantRecord rec = mutate(tree, a.ratio, parse_kinds(a.kinds), s.seed.value_or(0));
  if (a.output.empty() || a.output == "-") {
    Json j;
    j["mutant"] = to_html(rec.mutant);
    j["record"] = record_to_json(rec);
    out << j.dump(2) << "\n";
    return;
  }
  write_file(a.output + ".html", to_html(rec.mutant));
  write_file(a.output + ".record.json", record_to_json(rec).dump(2) + "\n");
}

struct GenArgs {
  std::string out_dir, source;
  CLI::Option* pages = nullptr;
  CLI::Option* mutants = nullptr;
  CLI::Option* min_ratio = nullptr;
  CLI::Option* max_ratio = nullptr;
  CLI::Option* kinds = nullptr;
  CLI::Option* min_nodes = nullptr;
  CLI::Option* step_nodes = nullptr;
  int pages_v = 0, mutants_v = 0, min_nodes_v = 0, step_nodes_v = 0;
  double min_ratio_v = 0, max_ratio_v = 0;
  std::string kinds_v;
  bool constrained = false;
};

void do_dataset_gen(Settings s, const GenArgs& a, std::ostream& err) {
  if (a.pages->count()) s.sources.pages = a.pages_v;
  if (a.min_nodes->count()) s.sources.min_nodes = a.min_nodes_v;
  if (a.step_nodes->count()) s.sources.step_nodes = a.step_nodes_v;
  if (a.mutants->count()) s.dataset.mutants_per_page = a.mutants_v;
  if (a.min_ratio->count()) s.dataset.min_ratio = a.min_ratio_v;
  if (a.max_ratio->count()) s.dataset.max_ratio = a.max_ratio_v;
  if (a.kinds->count()) s.dataset.kinds = parse_kinds(a.kinds_v);
  if (a.constrained) s.dataset.constrained = true;
  std::vector<SourcePage> sources =
      a.source.empty() ? synthetic_sources(s.sources) : load_sources(a.source);
  auto corpus = build_corpus(sources, s.seed.value_or(0), s.dataset);
  write_corpus(corpus, a.out_dir);
  err << "wrote " << corpus.size() << " sites x " << s.dataset.mutants_per_page
      << " mutants to " << a.out_dir << "\n";
}

struct WaybackArgs {
  std::string urls, out_dir, fixture, record, from, to, gaps;
  CLI::Option* max_pairs = nullptr;
  CLI::Option* tolerance = nullptr;
  CLI::Option* rate = nullptr;
  std::size_t max_pairs_v = 0;
  double tolerance_v = 0;
  int rate_v = 0;
};

std::vector<std::string> read_url_list(const std::string& path) {
  std::stringstream ss(read_file(path));
  std::vector<std::string> urls;
  std::string line;
  while (std::getline(ss, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    urls.push_back(line.substr(b, e - b + 1));
  }
  if (urls.empty()) throw ConfigError(path + ": no URLs");
  return urls;
}

void do_dataset_wayback(Settings s, const WaybackArgs& a, std::ostream& err) {
  if (!a.from.empty()) s.range.from = parse_date(a.from);
  if (!a.to.empty()) s.range.to = parse_date(a.to);
  if (!a.gaps.empty()) {
    s.pairs.gap_days.clear();
    for (const auto& g : split_list(a.gaps)) {
      try {
        s.pairs.gap_days.push_back(std::stoi(g));
      } catch (const std::exception&) {
        throw ConfigError("bad gap '" + g + "'");
      }
    }
  }
  if (a.max_pairs->count()) s.pairs.max_pairs = a.max_pairs_v;
  if (a.tolerance->count()) s.pairs.tolerance = a.tolerance_v;
  if (a.rate->count()) s.min_interval_ms = a.rate_v;
  s.pairs.validate();
  if (s.range.to < s.range.from) throw ConfigError("--to is before --from");

  const auto urls = read_url_list(a.urls);
  std::unique_ptr<Transport> base;
  if (!a.fixture.empty()) {
    base = std::make_unique<FixtureTransport>(a.fixture);
  } else {
    HttpTransportConfig hc;
    hc.min_interval = std::chrono::milliseconds(s.min_interval_ms);
    base = std::make_unique<HttpTransport>(hc);
  }
  std::unique_ptr<RecordingTransport> recorder;
  Transport* transport = base.get();
  if (!a.record.empty()) {
    recorder = std::make_unique<RecordingTransport>(*base);
    transport = recorder.get();
  }
  WaybackConfig wc;
  wc.max_attempts = s.max_attempts;
  WaybackClient client(*transport, wc);
  WaybackDatasetConfig dc;
  dc.range = s.range;
  dc.pairs = s.pairs;
  dc.seed = s.seed.value_or(0);
  dc.jobs = static_cast<std::size_t>(s.jobs.value_or(1));
  auto manifest = build_wayback_dataset(client, urls, dc, a.out_dir);
  if (recorder) recorder->save(a.record);
  std::size_t ok = std::count_if(manifest.begin(), manifest.end(),
                                 [](const ManifestEntry& e) { return e.status == "ok"; });
  err << urls.size() << " urls, " << manifest.size() << " entries, " << ok << " ok, "
      << manifest.size() - ok << " skipped\n";
}

struct BenchArgs {
  std::string corpus, out_dir, algos;
  CLI::Option* targets = nullptr;
  CLI::Option* repeats = nullptr;
  std::size_t targets_v = 0;
  int repeats_v = 0;
  bool timing = false;
  bool wallclock = false;
};

int default_jobs() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void do_bench(Settings s, const BenchArgs& a, std::ostream& err) {
  if (a.targets->count()) s.targets = a.targets_v;
  if (a.repeats->count()) s.timing_repeats = a.repeats_v;
  if (!a.algos.empty()) {
    s.algorithms.clear();
    for (const auto& n : split_list(a.algos)) s.algorithms.push_back(parse_algorithm(n));
  }
  const auto corpus = read_corpus(a.corpus);
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);

  if (a.timing) {
    // The largest page against its first mutant.
    const CorpusSite* pick = nullptr;
    for (const auto& site : corpus) {
      if (!pick || site.original.size() > pick->original.size()) pick = &site;
    }
    const DomTree& right = pick->mutants.empty() ? pick->original : pick->mutants[0].mutant;
    TimingConfig tc;
    tc.locator_counts = s.locator_counts;
    tc.repeats = s.timing_repeats;
    tc.seed = s.seed.value_or(0);
    tc.sftm = s.sftm;
    tc.water = s.water;
    if (s.jobs && *s.jobs != 1) err << "note: timing runs sequentially, --jobs ignored\n";
    TimingReport r = measure_timing(pick->original, right, tc);
    write_file(dir / "timing.json", timing_to_json(r).dump(2) + "\n");
    std::ostringstream csv;
    write_timing_csv(r, csv);
    write_file(dir / "timing.csv", csv.str());
    err << "timing on " << pick->site << " (" << r.left_size << " nodes)";
    if (r.crossover) err << ", crossover at " << *r.crossover << " locators";
    err << "\n";
    return;
  }

  BenchConfig bc;
  bc.algorithms = s.algorithms;
  bc.targets_per_page = s.targets;
  bc.seed = s.seed.value_or(0);
  bc.sftm = s.sftm;
  bc.water = s.water;
  bc.jobs = s.jobs.value_or(default_jobs());
  bc.wallclock = a.wallclock;
  BenchReport report = run_benchmark(bench_cases(corpus), bc);
  std::ostringstream csv;
  write_metrics_csv(report, csv);
  write_file(dir / "metrics.csv", csv.str());
  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_plot_series(report, dir);
  for (const auto& [algo, o] : report.overall) {
    err << algorithm_name(algo) << ": " << o.trials << " trials, correct "
        << o.ratio(Outcome::kCorrect) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locator repair by tree matching, with the WATER baseline and benchmarks.",
               "erratum"};
  app.set_version_flag("--version", "erratum 0.1.0");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  common.config_opt = app.add_option("--config", common.config_path,
                                     "JSON configuration (default: $ERRATUM_CONFIG)");
  common.seed_opt = app.add_option("--seed", common.seed, "Random seed (default: $ERRATUM_SEED)");
  app.add_option("--set", common.sets, "Override a config value, e.g. sftm.propagationWeight=0.5");
  common.jobs_opt = app.add_option("--jobs", common.jobs, "Worker threads");

  std::function<void()> action;

  MatchArgs match;
  auto* m = app.add_subcommand("match", "Match two pages and print the matching as JSON");
  m->add_option("old", match.old_path, "Old page")->required();
  m->add_option("new", match.new_path, "New page")->required();
  m->add_option("-o,--output", match.output, "Output file (default: stdout)");

  RepairArgs repair;
  auto* r = app.add_subcommand("repair", "Relocate XPath locators from the old page to the new one");
  r->add_option("old", repair.old_path, "Old page")->required();
  r->add_option("new", repair.new_path, "New page")->required();
  r->add_option("-l,--locator", repair.locators, "XPath locator (repeatable)")->required();
  r->add_option("--algo", repair.algo, "erratum or water")
      ->check(CLI::IsMember({"erratum", "water"}));
  r->add_option("-o,--output", repair.output, "Output file (default: stdout)");

  MutateArgs mut;
  auto* mu = app.add_subcommand("mutate", "Mutate a page; writes <out>.html and <out>.record.json");
  mu->add_option("page", mut.page, "Page to mutate")->required();
  mu->add_option("--ratio", mut.ratio, "Mutations per node")->required()->check(CLI::Range(0.0, 1.0));
  mu->add_option("--kinds", mut.kinds, "Comma-separated kinds or categories");
  mu->add_option("-o,--output", mut.output, "Output prefix (default: JSON on stdout)");

  auto* ds = app.add_subcommand("dataset", "Build corpora");
  ds->require_subcommand(1);
  GenArgs gen;
  auto* g = ds->add_subcommand("gen", "Mutation corpus from synthetic or supplied pages");
  g->add_option("-o,--out", gen.out_dir, "Corpus directory")->required();
  g->add_option("--source", gen.source, "Directory of .html source pages")->check(CLI::ExistingDirectory);
  gen.pages = g->add_option("--pages", gen.pages_v, "Synthetic pages");
  gen.min_nodes = g->add_option("--min-nodes", gen.min_nodes_v, "Smallest synthetic page size");
  gen.step_nodes = g->add_option("--step-nodes", gen.step_nodes_v, "Size step between synthetic pages");
  gen.mutants = g->add_option("--mutants", gen.mutants_v, "Mutants per page");
  gen.min_ratio = g->add_option("--min-ratio", gen.min_ratio_v, "Lower ratio bound (exclusive)");
  gen.max_ratio = g->add_option("--max-ratio", gen.max_ratio_v, "Upper ratio bound");
  gen.kinds = g->add_option("--kinds", gen.kinds_v, "Comma-separated kinds or categories");
  g->add_flag("--constrained", gen.constrained, "One kind per mutant");

  WaybackArgs wb;
  auto* w = ds->add_subcommand("wayback", "Version pairs from a web archive");
  w->add_option("--urls", wb.urls, "File with one URL per line")->required();
  w->add_option("-o,--out", wb.out_dir, "Dataset directory")->required();
  w->add_option("--fixture", wb.fixture, "Replay responses from a fixture directory")
      ->check(CLI::ExistingDirectory);
  w->add_option("--record", wb.record, "Save every response as a fixture directory");
  w->add_option("--from", wb.from, "First day (YYYY-MM-DD)");
  w->add_option("--to", wb.to, "Last day (YYYY-MM-DD)");
  w->add_option("--gaps", wb.gaps, "Gap buckets in days, comma-separated");
  wb.max_pairs = w->add_option("--max-pairs", wb.max_pairs_v, "Pairs kept per URL");
  wb.tolerance = w->add_option("--tolerance", wb.tolerance_v, "Relative gap tolerance");
  wb.rate = w->add_option("--min-interval-ms", wb.rate_v, "Spacing between live requests");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run the benchmark on a corpus");
  b->add_option("corpus", bench.corpus, "Corpus directory")->required();
  b->add_option("-o,--out", bench.out_dir, "Output directory")->required();
  bench.targets = b->add_option("--targets", bench.targets_v, "Targets per page");
  b->add_option("--algos", bench.algos, "Comma-separated algorithms");
  b->add_flag("--wallclock", bench.wallclock, "Record timeMs (output is then not reproducible)");
  b->add_flag("--timing", bench.timing, "Measure repair time against locator count instead");
  bench.repeats = b->add_option("--repeats", bench.repeats_v, "Timing repeats");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings s = load_settings(common);
    if (*m) do_match(s, match, out);
    if (*r) do_repair(s, repair, out);
    if (*mu) do_mutate(s, mut, out);
    if (*g) do_dataset_gen(s, gen, err);
    if (*w) do_dataset_wayback(s, wb, err);
    if (*b) do_bench(s, bench, err);
  } catch (const MissingFile& e) {
    err << "error: missing file: " << e.what() << "\n";
    return kExitFailure;
  } catch (const InvalidLocator& e) {
    err << "error: invalid XPath " << e.what() << "\n";
    return kExitFailure;
  } catch (const MalformedConfig& e) {
    err << "error: malformed config: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace erratum::cli

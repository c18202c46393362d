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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "erratum/bench.h"
#include "erratum/corpus.h"
#include "erratum/wayback.h"
#include "test_support.h"

namespace erratum {
namespace {

namespace fs = std::filesystem;
using ::erratum::testing::data_path;
using ::testing::HasSubstr;
using Json = nlohmann::ordered_json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("ERRATUM_SEED");
    unsetenv("ERRATUM_CONFIG");
    dir_ = fs::temp_directory_path() /
           ("erratum_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv("ERRATUM_SEED");
    unsetenv("ERRATUM_CONFIG");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }

  fs::path dir_;
  const std::string old_page_ = data_path("pages/sample-old.html");
  const std::string new_page_ = data_path("pages/sample-new.html");
};

TEST_F(CliTest, RepairRelocatesAMovedLink) {
  Result r = run({"repair", old_page_, new_page_, "--locator",
                  "/html[1]/body[1]/div[1]/div[2]/a[1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["algorithm"], "erratum");
  const Json& e = j["locators"][0]["elements"][0];
  EXPECT_EQ(e["status"], "relocated");
  EXPECT_EQ(e["newXPath"], "/html[1]/body[1]/div[1]/div[1]/div[2]/a[1]");
}

TEST_F(CliTest, RepairWithWaterAndToFile) {
  Result r = run({"repair", old_page_, new_page_, "-l", "/html[1]/body[1]/div[1]/div[2]/a[1]",
                  "-l", "/html[1]/body[1]/p[7]", "--algo", "water", "-o", path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  Json j = Json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["algorithm"], "water");
  ASSERT_EQ(j["locators"].size(), 2u);
  EXPECT_TRUE(j["locators"][1].contains("error"));
}

TEST_F(CliTest, MatchOfAPageWithItselfIsTheIdentity) {
  Result r = run({"match", old_page_, old_page_});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_GT(j["totalScore"].get<double>(), 0.0);
  EXPECT_TRUE(j["unmatchedLeft"].empty());
  for (const auto& p : j["pairs"]) EXPECT_EQ(p["left"], p["right"]);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("seed"));
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"match", old_page_}).code, cli::kExitUsage);
  EXPECT_EQ(run({"match", old_page_, new_page_, "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"repair", old_page_, new_page_}).code, cli::kExitUsage);
  EXPECT_EQ(run({"repair", old_page_, new_page_, "-l", "/html", "--algo", "x"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"mutate", old_page_, "--ratio", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"dataset"}).code, cli::kExitUsage);
  Result help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_THAT(help.out, HasSubstr("bench"));
}

TEST_F(CliTest, OperationalErrorsExitWithOneAndDistinctMessages) {
  Result missing = run({"match", path("absent.html"), old_page_});
  EXPECT_EQ(missing.code, 1);
  EXPECT_THAT(missing.err, HasSubstr("missing file"));

  Result xpath = run({"repair", old_page_, new_page_, "-l", "/html[1]/div[("});
  EXPECT_EQ(xpath.code, 1);
  EXPECT_THAT(xpath.err, HasSubstr("invalid XPath"));

  Result bad_json = run({"--config", write("c.json", "{oops"), "match", old_page_, old_page_});
  EXPECT_EQ(bad_json.code, 1);
  EXPECT_THAT(bad_json.err, HasSubstr("malformed config"));

  Result unknown = run({"--config", write("u.json", R"({"colour":1})"), "match", old_page_,
                        old_page_});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_THAT(unknown.err, HasSubstr("unknown config key 'colour'"));

  EXPECT_EQ(run({"--set", "sftm.cooling=7", "match", old_page_, old_page_}).code, 1);
  EXPECT_EQ(run({"--jobs", "0", "match", old_page_, old_page_}).code, 1);
  Result empty = run({"match", write("empty.html", ""), old_page_});
  EXPECT_EQ(empty.code, 1);
  EXPECT_THAT(empty.err, HasSubstr("empty.html"));
  for (const auto& r : {missing, xpath, bad_json}) EXPECT_TRUE(r.out.empty());
}

std::uint64_t mutate_seed(const Result& r) {
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out)["record"]["seed"].get<std::uint64_t>();
}

TEST_F(CliTest, SeedPrecedenceIsFlagThenEnvironmentThenConfig) {
  const std::vector<std::string> cmd = {"mutate", old_page_, "--ratio", "0.2"};
  auto with = [&](std::vector<std::string> pre) {
    pre.insert(pre.end(), cmd.begin(), cmd.end());
    return run(pre);
  };
  EXPECT_EQ(mutate_seed(with({})), 0u);
  const std::string config = write("c.json", R"({"seed": 5})");
  EXPECT_EQ(mutate_seed(with({"--config", config})), 5u);
  setenv("ERRATUM_CONFIG", config.c_str(), 1);
  EXPECT_EQ(mutate_seed(with({})), 5u);
  setenv("ERRATUM_SEED", "6", 1);
  EXPECT_EQ(mutate_seed(with({})), 6u);
  EXPECT_EQ(mutate_seed(with({"--seed", "7"})), 7u);
  // A flag after the subcommand works too.
  Result late = run({"mutate", old_page_, "--ratio", "0.2", "--seed", "8"});
  EXPECT_EQ(mutate_seed(late), 8u);
}

TEST_F(CliTest, ConfigFlagAndSetOverridesTakePrecedence) {
  auto weight = [&](std::vector<std::string> pre) {
    pre.insert(pre.end(), {"match", old_page_, new_page_});
    Result r = run(pre);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out)["config"]["propagationWeight"].get<double>();
  };
  EXPECT_DOUBLE_EQ(weight({}), SftmConfig{}.propagation_weight);
  const std::string env_cfg = write("env.json", R"({"sftm": {"propagationWeight": 0.3}})");
  const std::string flag_cfg = write("flag.json", R"({"sftm": {"propagationWeight": 0.25}})");
  setenv("ERRATUM_CONFIG", env_cfg.c_str(), 1);
  EXPECT_DOUBLE_EQ(weight({}), 0.3);
  EXPECT_DOUBLE_EQ(weight({"--config", flag_cfg}), 0.25);
  EXPECT_DOUBLE_EQ(weight({"--set", "sftm.propagationWeight=0.2"}), 0.2);
  EXPECT_DOUBLE_EQ(weight({"--set", "sftm.tokenizer.includeText=true",
                           "--set", "sftm.propagationWeight=0.1"}),
                   0.1);
}

TEST_F(CliTest, MutateWritesMutantAndRecordDeterministically) {
  const std::vector<std::string> cmd = {"mutate", old_page_, "--ratio", "0.3", "--kinds",
                                        "structure,attribute.remove", "--seed", "11"};
  auto a = cmd, b = cmd;
  a.insert(a.end(), {"-o", path("a/m")});
  b.insert(b.end(), {"-o", path("b/m")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(path("a/m.html")), slurp(path("b/m.html")));
  EXPECT_EQ(slurp(path("a/m.record.json")), slurp(path("b/m.record.json")));
  Json rec = Json::parse(slurp(path("a/m.record.json")));
  EXPECT_FALSE(rec["ops"].empty());
  EXPECT_EQ(run(cmd).out, run(cmd).out);
  EXPECT_EQ(run({"mutate", old_page_, "--ratio", "0.1", "--kinds", "sparkle"}).code, 1);
}

TEST_F(CliTest, BenchMatchesTheHarnessOnAGeneratedCorpus) {
  const std::string corpus = path("corpus");
  Result gen = run({"dataset", "gen", "-o", corpus, "--pages", "20", "--min-nodes", "120",
                    "--step-nodes", "8", "--mutants", "2", "--seed", "4"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  Result bench = run({"bench", corpus, "-o", path("out"), "--targets", "5", "--seed", "2",
                      "--jobs", "2"});
  ASSERT_EQ(bench.code, 0) << bench.err;

  BenchConfig bc;
  bc.targets_per_page = 5;
  bc.seed = 2;
  BenchReport direct = run_benchmark(bench_cases(read_corpus(corpus)), bc);
  std::ostringstream csv;
  write_metrics_csv(direct, csv);
  EXPECT_EQ(slurp(path("out/metrics.csv")), csv.str());
  EXPECT_EQ(Json::parse(slurp(path("out/report.json"))), report_to_json(direct));

  // Label ratios recomputed from the CSV rows.
  std::map<std::string, std::map<std::string, int>> labels;
  std::map<std::string, int> totals;
  std::istringstream rows(slurp(path("out/metrics.csv")));
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    ASSERT_GE(f.size(), 5u);
    ++labels[f[0]][f[4]];
    ++totals[f[0]];
  }
  for (const auto& [algo, summary] : direct.overall) {
    const std::string name(algorithm_name(algo));
    ASSERT_EQ(totals[name], static_cast<int>(summary.trials));
    for (Outcome o : {Outcome::kCorrect, Outcome::kMismatch, Outcome::kNoMatch}) {
      EXPECT_DOUBLE_EQ(labels[name][std::string(outcome_name(o))] / double(totals[name]),
                       summary.ratio(o))
          << name << " " << outcome_name(o);
    }
  }
  EXPECT_TRUE(fs::exists(path("out/accuracy_by_ratio.csv")));

  // Same inputs, same bytes, whatever the thread count.
  ASSERT_EQ(run({"bench", corpus, "-o", path("again"), "--targets", "5", "--seed", "2",
                 "--jobs", "1"}).code, 0);
  EXPECT_EQ(slurp(path("again/metrics.csv")), slurp(path("out/metrics.csv")));
  EXPECT_EQ(slurp(path("again/report.json")), slurp(path("out/report.json")));
}

TEST_F(CliTest, DatasetGenIsReproducible) {
  for (const char* d : {"c1", "c2"}) {
    ASSERT_EQ(run({"dataset", "gen", "-o", path(d), "--pages", "2", "--min-nodes", "100",
                   "--mutants", "3", "--seed", "9"}).code, 0);
  }
  for (const auto& e : fs::recursive_directory_iterator(path("c1"))) {
    if (!e.is_regular_file()) continue;
    fs::path rel = fs::relative(e.path(), path("c1"));
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(path("c2")) / rel)) << rel;
  }
  ASSERT_EQ(run({"dataset", "gen", "-o", path("c3"), "--source",
                 data_path("pages"), "--mutants", "1"}).code, 0);
  EXPECT_TRUE(fs::exists(path("c3/login-form/mutants/0.record.json")));
}

TEST_F(CliTest, DatasetWaybackReplaysTheFixture) {
  const std::string urls = data_path("wayback/urls.txt");
  const std::string fixture = data_path("wayback");
  Result r = run({"dataset", "wayback", "--urls", urls, "--fixture", fixture, "-o",
                  path("wb"), "--record", path("rec"), "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_THAT(r.err, HasSubstr("15 entries, 13 ok, 2 skipped"));
  auto manifest = manifest_from_json(nlohmann::json::parse(slurp(path("wb/manifest.json"))));
  ASSERT_EQ(manifest.size(), 15u);
  for (const auto& e : manifest) {
    if (e.status != "ok") EXPECT_FALSE(e.reason.empty());
  }
  Result replay = run({"dataset", "wayback", "--urls", urls, "--fixture", path("rec"), "-o",
                       path("wb2")});
  ASSERT_EQ(replay.code, 0) << replay.err;
  EXPECT_EQ(slurp(path("wb/manifest.json")), slurp(path("wb2/manifest.json")));

  Result narrow = run({"dataset", "wayback", "--urls", urls, "--fixture", fixture, "-o",
                       path("wb3"), "--gaps", "7"});
  ASSERT_EQ(narrow.code, 0) << narrow.err;
  // shop 0-7 and 30-37 (gone); 8 days is outside 7 +- 10%, so news and
  // blog have nothing to pair.
  EXPECT_THAT(narrow.err, HasSubstr("4 entries, 1 ok, 3 skipped"));
  EXPECT_EQ(run({"dataset", "wayback", "--urls", urls, "--fixture", fixture, "-o",
                 path("wb4"), "--gaps", "seven"}).code, 1);
}

TEST_F(CliTest, BenchTimingWritesSeries) {
  const std::string corpus = path("corpus");
  ASSERT_EQ(run({"dataset", "gen", "-o", corpus, "--pages", "2", "--min-nodes", "150",
                 "--mutants", "1"}).code, 0);
  Result r = run({"--set", "timing.locatorCounts=[1,2,4]", "bench", corpus, "-o",
                  path("t"), "--timing", "--repeats", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(slurp(path("t/timing.json")));
  EXPECT_TRUE(j.contains("crossover"));
  EXPECT_THAT(slurp(path("t/timing.csv")), HasSubstr("locators,algorithm,medianMs"));
  EXPECT_EQ(run({"bench", path("nowhere"), "-o", path("t2")}).code, 1);
}

}  // namespace
}  // namespace erratum

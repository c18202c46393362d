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

#include "erratum/repair.h"

#include <string>
#include <thread>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "erratum/dom.h"
#include "erratum/mutagen.h"
#include "erratum/page_synth.h"
#include "erratum/xpath.h"
#include "test_support.h"

namespace erratum {
namespace {

using ::erratum::testing::find_node;
using ::erratum::testing::load_page;

class FigureRepairTest : public ::testing::Test {
 protected:
  DomTree old_ = load_page("sample-old.html");
  DomTree new_ = load_page("sample-new.html");
};

TEST_F(FigureRepairTest, LinkMovesUnderTheNewWrapper) {
  RepairEngine engine;
  auto out = engine.repair(old_, new_, {"/html[1]/body[1]/div[1]/div[2]/a[1]"});
  ASSERT_EQ(out.size(), 1u);
  ASSERT_FALSE(out[0].error);
  ASSERT_EQ(out[0].elements.size(), 1u);
  const ElementRepair& e = out[0].elements[0];
  EXPECT_EQ(e.status, RepairStatus::kRelocated);
  EXPECT_EQ(e.new_xpath, "/html[1]/body[1]/div[1]/div[1]/div[2]/a[1]");
  EXPECT_EQ(*new_[e.new_node].attribute("href"), "/extensions");
  EXPECT_EQ(eval_xpath(new_, e.new_xpath), std::vector<NodeId>{e.new_node});
  EXPECT_TRUE(e.score.has_value());
}

TEST_F(FigureRepairTest, WaterPicksTheLinkAtTheOldPosition) {
  auto out = water_repair(old_, new_, {"/html[1]/body[1]/div[1]/div[2]/a[1]"});
  ASSERT_EQ(out[0].elements.size(), 1u);
  EXPECT_EQ(*new_[out[0].elements[0].new_node].attribute("href"),
            "/newsletter");
  auto report = repair_report_json("water", out);
  EXPECT_EQ(report["algorithm"], "water");
}

TEST_F(FigureRepairTest, OneMatchingPerPagePair) {
  RepairEngine engine;
  std::vector<std::string> locators;
  for (const DomNode& n : old_.nodes()) {
    locators.push_back(absolute_xpath(old_, n.id));
  }
  auto before = match_trees_invocations();
  engine.repair(old_, new_, locators);
  EXPECT_EQ(match_trees_invocations(), before + 1);
  engine.repair(old_, new_, {locators[0]});
  EXPECT_EQ(match_trees_invocations(), before + 1);
  EXPECT_EQ(engine.cache_size(), 1u);
  engine.clear_cache();
  engine.repair(old_, new_, {locators[0]});
  EXPECT_EQ(match_trees_invocations(), before + 2);
}

TEST_F(FigureRepairTest, InvalidLocatorsReportErrors) {
  RepairEngine engine;
  auto before = match_trees_invocations();
  auto out = engine.repair(old_, new_, {"//a", "/html[", "/html/body/nav"});
  ASSERT_EQ(out.size(), 3u);
  for (const auto& r : out) {
    EXPECT_TRUE(r.error.has_value()) << r.descriptor;
    EXPECT_TRUE(r.elements.empty());
  }
  EXPECT_EQ(match_trees_invocations(), before);

  out = engine.repair(old_, new_, {"/html[", "/html/body/div/div"});
  EXPECT_TRUE(out[0].error);
  ASSERT_FALSE(out[1].error);
  EXPECT_EQ(out[1].elements.size(), 2u);
}

TEST_F(FigureRepairTest, ReportShape) {
  RepairEngine engine;
  auto out = engine.repair(old_, new_, {"/html/body/div/div[2]/a", "//p"});
  auto j = repair_report_json("erratum", out);
  EXPECT_EQ(j["algorithm"], "erratum");
  ASSERT_EQ(j["locators"].size(), 2u);
  const auto& el = j["locators"][0]["elements"][0];
  EXPECT_EQ(el["oldXPath"], "/html[1]/body[1]/div[1]/div[2]/a[1]");
  EXPECT_EQ(el["status"], "relocated");
  EXPECT_TRUE(el.contains("newXPath"));
  EXPECT_TRUE(el.contains("score"));
  EXPECT_TRUE(j["locators"][1].contains("error"));
}

TEST(RepairTest, IdentityRelocatesEveryLocator) {
  DomTree page = parse_html(synthesize_page(21, PageSynthConfig{.target_nodes = 500}));
  std::vector<std::string> locators;
  for (const DomNode& n : page.nodes()) {
    locators.push_back(absolute_xpath(page, n.id));
  }
  RepairEngine engine;
  auto out = engine.repair(page, page, locators);
  ASSERT_EQ(out.size(), page.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    ASSERT_EQ(out[i].elements.size(), 1u);
    const auto& e = out[i].elements[0];
    EXPECT_EQ(e.status, RepairStatus::kRelocated);
    EXPECT_EQ(e.new_node, static_cast<NodeId>(i));
    EXPECT_EQ(e.new_xpath, locators[i]);
  }
}

TEST(RepairTest, RemovedTargetIsNoMatch) {
  DomTree page = assign_signatures(load_page("sample-old.html", true));
  NodeId a1 = find_node(page, "a");
  const std::string a_sig = *page[a1].signature();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MutantRecord r = mutate(page, 0.25, {MutationKind::kStructureRemove}, seed);
    if (r.ops[0].target != a_sig) continue;
    ASSERT_EQ(r.ground_truth.at(a_sig), kNoNode);
    RepairEngine engine;
    auto out = engine.repair(page, r.mutant, {absolute_xpath(page, a1)});
    ASSERT_EQ(out[0].elements.size(), 1u);
    EXPECT_EQ(out[0].elements[0].status, RepairStatus::kNoMatch);
    EXPECT_FALSE(out[0].elements[0].score.has_value());
    return;
  }
  FAIL() << "no seed removed the link";
}

TEST(RepairTest, NewLocatorsRoundTripOnMutants) {
  DomTree page = assign_signatures(
      parse_html(synthesize_page(22, PageSynthConfig{.target_nodes = 400})));
  MutantRecord r = mutate(page, 0.15, all_kinds(), 22);
  std::vector<NodeId> nodes(page.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<NodeId>(i);
  RepairEngine engine;
  for (const auto& e : engine.repair_nodes(page, r.mutant, nodes)) {
    if (e.status != RepairStatus::kRelocated) continue;
    EXPECT_EQ(eval_xpath(r.mutant, e.new_xpath), std::vector<NodeId>{e.new_node});
    EXPECT_EQ(r.mutant[e.new_node].tag, page[e.old_node].tag);
  }
  for (const auto& e : water_repair_nodes(page, r.mutant, nodes)) {
    if (e.status != RepairStatus::kRelocated) continue;
    EXPECT_EQ(eval_xpath(r.mutant, e.new_xpath), std::vector<NodeId>{e.new_node});
  }
}

TEST(RepairTest, ConcurrentCallersShareOneMatching) {
  DomTree a = parse_html(synthesize_page(23, PageSynthConfig{.target_nodes = 300}));
  DomTree b = parse_html(synthesize_page(24, PageSynthConfig{.target_nodes = 300}));
  RepairEngine engine;
  std::vector<std::shared_ptr<const Matching>> seen(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { seen[i] = engine.matching(a, b); });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(engine.cache_size(), 1u);
  auto cached = engine.matching(a, b);
  for (const auto& m : seen) EXPECT_EQ(m->pairs, cached->pairs);
}

}  // namespace
}  // namespace erratum

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

#include "erratum/water.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "erratum/dom.h"
#include "erratum/error.h"
#include "erratum/mutagen.h"
#include "erratum/page_synth.h"
#include "erratum/strings.h"
#include "erratum/xpath.h"
#include "test_support.h"

namespace erratum {
namespace {

using ::erratum::testing::find_node;
using ::erratum::testing::load_page;

// Textbook full-matrix edit distance.
std::size_t reference_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return d[a.size()][b.size()];
}

TEST(StringsTest, XPathEditDistanceExample) {
  const std::string a = "/html[1]/body[1]/div[1]/a[1]";
  const std::string b = "/html[1]/body[1]/div[2]/a[1]";
  EXPECT_EQ(levenshtein(a, b), 1u);
  EXPECT_EQ(reference_levenshtein(a, b), 1u);
  EXPECT_DOUBLE_EQ(normalized_similarity(a, b), 1.0 - 1.0 / a.size());
}

TEST(StringsTest, LevenshteinMatchesReference) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    auto gen = [&] {
      std::string s(rng() % 20, ' ');
      for (char& c : s) c = "abc/[]1"[rng() % 7];
      return s;
    };
    std::string a = gen(), b = gen();
    EXPECT_EQ(levenshtein(a, b), reference_levenshtein(a, b)) << a << " " << b;
    EXPECT_EQ(levenshtein(a, b), levenshtein(b, a));
  }
  EXPECT_DOUBLE_EQ(normalized_similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(normalized_similarity("abc", ""), 0.0);
}

TEST(StringsTest, Jaccard) {
  using V = std::vector<int>;
  EXPECT_DOUBLE_EQ(jaccard(V{}, V{}), 1.0);
  EXPECT_DOUBLE_EQ(jaccard(V{1, 2}, V{}), 0.0);
  EXPECT_DOUBLE_EQ(jaccard(V{1, 2, 3}, V{2, 3, 4}), 0.5);
}

TEST(WaterTest, IdentityReturnsTheSameElement) {
  DomTree page = parse_html(synthesize_page(3, PageSynthConfig{.target_nodes = 300}));
  for (const DomNode& n : page.nodes()) {
    auto c = water_relocate(page, page, n.id);
    ASSERT_TRUE(c.has_value()) << n.tag;
    EXPECT_EQ(c->node, n.id);
    EXPECT_DOUBLE_EQ(c->score, 1.0);
  }
}

TEST(WaterTest, NoCandidateWithTheTag) {
  DomTree old_tree = parse_html("<div><a href='/x'>x</a></div>");
  DomTree new_tree = parse_html("<div><span>x</span></div>");
  EXPECT_FALSE(water_relocate(old_tree, new_tree, find_node(old_tree, "a")));
  EXPECT_TRUE(water_rank(old_tree, new_tree, find_node(old_tree, "a")).empty());
}

TEST(WaterTest, FigureLinkFollowsItsOldPath) {
  DomTree old_tree = load_page("sample-old.html");
  DomTree new_tree = load_page("sample-new.html");
  NodeId a1 = find_node(old_tree, "a");
  auto c = water_relocate(old_tree, new_tree, a1);
  ASSERT_TRUE(c);
  // The newsletter link now sits at the old link's exact position.
  EXPECT_EQ(*new_tree[c->node].attribute("href"), "/newsletter");
  EXPECT_EQ(absolute_xpath(new_tree, c->node), absolute_xpath(old_tree, a1));
}

TEST(WaterTest, ScoreCombinesFeatures) {
  DomTree old_tree = load_page("sample-old.html");
  DomTree new_tree = load_page("sample-new.html");
  NodeId a1 = find_node(old_tree, "a");
  for (NodeId c : eval_xpath(new_tree, "/html/body/div/div/div/a")) {
    WaterFeatures f = water_features(old_tree, a1, new_tree, c);
    const std::string x1 = absolute_xpath(old_tree, a1);
    const std::string x2 = absolute_xpath(new_tree, c);
    EXPECT_DOUBLE_EQ(f.xpath,
                     1.0 - static_cast<double>(reference_levenshtein(x1, x2)) /
                               std::max(x1.size(), x2.size()));
    // {href, /plugins} against {href, /extensions}.
    EXPECT_DOUBLE_EQ(f.attributes, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(f.text, normalized_similarity("Plugins", "Extensions"));
    EXPECT_DOUBLE_EQ(water_score(old_tree, a1, new_tree, c),
                     0.6 * f.xpath + 0.25 * f.attributes + 0.15 * f.text);
  }
}

TEST(WaterTest, TiesResolveInDocumentOrder) {
  DomTree old_tree = parse_html("<div><span>t</span></div>");
  DomTree new_tree =
      parse_html("<div><p><span>t</span></p><i><span>t</span></i></div>");
  auto ranked = water_rank(old_tree, new_tree, find_node(old_tree, "span"));
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_DOUBLE_EQ(ranked[0].score, ranked[1].score);
  EXPECT_LT(ranked[0].node, ranked[1].node);
  EXPECT_EQ(water_relocate(old_tree, new_tree, find_node(old_tree, "span"))->node,
            ranked[0].node);
}

TEST(WaterTest, RankingIsSortedAndTagPreserving) {
  DomTree page = assign_signatures(
      parse_html(synthesize_page(5, PageSynthConfig{.target_nodes = 300})));
  MutantRecord r = mutate(page, 0.2, all_kinds(), 5);
  for (NodeId e = 0; e < static_cast<NodeId>(page.size()); e += 7) {
    auto ranked = water_rank(page, r.mutant, e);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      EXPECT_EQ(r.mutant[ranked[i].node].tag, page[e].tag);
      EXPECT_GE(ranked[i].score, 0.0);
      EXPECT_LE(ranked[i].score, 1.0 + 1e-12);
      if (i) {
        EXPECT_GE(ranked[i - 1].score, ranked[i].score);
        if (ranked[i - 1].score == ranked[i].score) {
          EXPECT_LT(ranked[i - 1].node, ranked[i].node);
        }
      }
    }
  }
}

TEST(WaterTest, ThresholdAndCandidateLimit) {
  DomTree old_tree = load_page("sample-old.html");
  DomTree new_tree = load_page("sample-new.html");
  NodeId a1 = find_node(old_tree, "a");
  WaterConfig strict;
  strict.threshold = 1.0;
  EXPECT_FALSE(water_relocate(old_tree, new_tree, a1, strict));
  WaterConfig first_only;
  first_only.max_candidates = 1;
  auto ranked = water_rank(old_tree, new_tree, a1, first_only);
  ASSERT_EQ(ranked.size(), 1u);
  EXPECT_EQ(ranked[0].node, find_node(new_tree, "a"));
}

TEST(WaterTest, UnknownNodeIsAnError) {
  DomTree t = parse_html("<p>x</p>");
  EXPECT_THROW(water_relocate(t, t, 99), InvalidNodeError);
  EXPECT_THROW(water_score(t, 0, t, -1), InvalidNodeError);
}

TEST(WaterConfigTest, ValidationAndJson) {
  WaterConfig c;
  EXPECT_NO_THROW(c.validate());
  c.text_weight = 0.3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.threshold = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.xpath_weight = 1.1;
  c.attribute_weight = -0.1;
  c.text_weight = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);

  WaterConfig d;
  d.xpath_weight = 0.5;
  d.attribute_weight = 0.5;
  d.text_weight = 0.0;
  d.max_candidates = 10;
  WaterConfig back = water_config_from_json(water_config_to_json(d));
  EXPECT_EQ(back.xpath_weight, 0.5);
  EXPECT_EQ(back.max_candidates, 10u);
  EXPECT_THROW(water_config_from_json({{"bogus", 1}}), ConfigError);
  EXPECT_THROW(water_config_from_json({{"threshold", "high"}}), ConfigError);
  EXPECT_THROW(water_config_from_json({{"textWeight", 0.5}}), ConfigError);
}

}  // namespace
}  // namespace erratum

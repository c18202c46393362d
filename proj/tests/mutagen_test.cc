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

#include "erratum/mutagen.h"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "erratum/dom.h"
#include "erratum/error.h"
#include "erratum/page_synth.h"
#include "test_support.h"

namespace erratum {
namespace {

using ::erratum::testing::find_node;
using ::erratum::testing::load_page;

DomTree signed_page(std::uint64_t seed, int nodes = 400) {
  return assign_signatures(
      parse_html(synthesize_page(seed, PageSynthConfig{.target_nodes = nodes})));
}

std::string sig(const DomTree& t, NodeId id) { return *t[id].signature(); }

// Checks every invariant a record must satisfy, independently of how it was
// produced.
void expect_consistent(const MutantRecord& r) {
  const DomTree& o = r.original;
  const DomTree& m = r.mutant;
  std::map<std::string, NodeId> orig_by_sig;
  for (const DomNode& n : o.nodes()) orig_by_sig[*n.signature()] = n.id;
  ASSERT_EQ(r.ground_truth.size(), o.size());

  // Every mutant node is signed (the parser inserted nothing), original
  // signatures appear once and new ones are fresh.
  std::set<std::string> seen;
  for (const DomNode& n : m.nodes()) {
    ASSERT_TRUE(n.signature().has_value()) << "unsigned " << n.tag;
    const std::string& s = *n.signature();
    EXPECT_TRUE(seen.insert(s).second) << "duplicate " << s;
    auto it = orig_by_sig.find(s);
    if (it == orig_by_sig.end()) {
      EXPECT_EQ(s[0], 'n') << s;
    } else {
      EXPECT_EQ(o[it->second].tag, n.tag) << s;
    }
  }

  // Soundness.
  for (const auto& [s, id] : r.ground_truth) {
    ASSERT_TRUE(orig_by_sig.count(s)) << s;
    if (id != kNoNode) {
      ASSERT_TRUE(m.contains(id));
      EXPECT_EQ(*m[id].signature(), s);
    }
  }

  // A node disappears only when it, or an original ancestor, was removed,
  // or when it was unwrapped.
  std::set<std::string> removed, unwrapped;
  for (const auto& op : r.ops) {
    EXPECT_TRUE(orig_by_sig.count(op.target)) << op.target;
    if (op.kind == MutationKind::kStructureRemove) removed.insert(op.target);
    if (op.kind == MutationKind::kStructureUnwrap) unwrapped.insert(op.target);
  }
  for (const auto& [s, id] : r.ground_truth) {
    if (id != kNoNode) continue;
    bool explained = unwrapped.count(s) > 0;
    for (NodeId a = orig_by_sig[s]; a != kNoNode && !explained; a = o[a].parent) {
      explained = removed.count(sig(o, a)) > 0;
    }
    EXPECT_TRUE(explained) << "lost " << s;
  }
  EXPECT_DOUBLE_EQ(r.ratio, static_cast<double>(r.ops.size()) / o.size());
}

TEST(MutationKindTest, NamesRoundTrip) {
  for (MutationKind k : all_kinds()) {
    EXPECT_EQ(parse_kind(kind_name(k)), k);
  }
  EXPECT_EQ(all_kinds().size(), 11u);
  EXPECT_EQ(kinds_in(MutationCategory::kStructure).size(), 5u);
  EXPECT_EQ(kinds_in(MutationCategory::kAttribute).size(), 2u);
  EXPECT_EQ(kinds_in(MutationCategory::kContent).size(), 4u);
  EXPECT_EQ(kind_name(MutationKind::kAttributeRemoveWords),
            "attribute.remove-words");
  EXPECT_THROW(parse_kind("structure.explode"), MutationError);
}

TEST(MutationKindTest, ParsesLists) {
  EXPECT_EQ(parse_kinds("all").size(), 11u);
  EXPECT_THAT(parse_kinds("attribute, content.remove"),
              ::testing::ElementsAre(MutationKind::kAttributeRemove,
                                     MutationKind::kAttributeRemoveWords,
                                     MutationKind::kContentRemove));
  EXPECT_EQ(parse_kinds("structure,structure.swap").size(), 5u);
  EXPECT_THROW(parse_kinds(""), MutationError);
  EXPECT_THROW(parse_kinds("structure,bogus"), MutationError);
}

TEST(MutateTest, ZeroRatioIsIdentity) {
  DomTree page = signed_page(1);
  MutantRecord r = mutate(page, 0.0, all_kinds(), 7);
  EXPECT_TRUE(r.ops.empty());
  EXPECT_EQ(r.mutant, page);
  for (const DomNode& n : page.nodes()) {
    EXPECT_EQ(r.ground_truth.at(*n.signature()), n.id);
  }
  expect_consistent(r);
}

TEST(MutateTest, RemovingSubtitleDropsItsLink) {
  DomTree page = assign_signatures(load_page("sample-old.html", true));
  NodeId div3 = find_node(page, "div", "item__subtitle");
  NodeId a1 = find_node(page, "a");
  // One op on four nodes; search for a seed whose target is div3.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    MutantRecord r =
        mutate(page, 0.25, {MutationKind::kStructureRemove}, seed);
    ASSERT_EQ(r.ops.size(), 1u);
    if (r.ops[0].target != sig(page, div3)) continue;
    found = true;
    EXPECT_EQ(r.ground_truth.at(sig(page, div3)), kNoNode);
    EXPECT_EQ(r.ground_truth.at(sig(page, a1)), kNoNode);
    EXPECT_EQ(r.ground_truth.at(sig(page, 0)), 0);
    EXPECT_EQ(r.mutant.size(), 2u);
    EXPECT_EQ(r.ops[0].payload["removedNodes"], 2);
    expect_consistent(r);
  }
  EXPECT_TRUE(found);
}

TEST(MutateTest, RootIsNeverRestructured) {
  DomTree page = assign_signatures(load_page("sample-old.html", true));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MutantRecord r = mutate(page, 1.0, kinds_in(MutationCategory::kStructure),
                            seed);
    EXPECT_EQ(r.ground_truth.at(sig(page, 0)), 0);
    for (const auto& op : r.ops) EXPECT_NE(op.target, sig(page, 0));
  }
}

TEST(MutateTest, DocumentSkeletonIsNeverRestructured) {
  DomTree page = signed_page(3);
  MutantRecord r = mutate(page, 0.25, kinds_in(MutationCategory::kStructure), 3);
  for (const DomNode& n : page.nodes()) {
    if (n.tag == "html" || n.tag == "head" || n.tag == "body" ||
        n.parent == find_node(page, "head")) {
      EXPECT_NE(r.ground_truth.at(*n.signature()), kNoNode) << n.tag;
      for (const auto& op : r.ops) EXPECT_NE(op.target, *n.signature());
    }
  }
}

TEST(MutateTest, OperationCountFollowsRounding) {
  DomTree page = signed_page(2);
  const double n = static_cast<double>(page.size());
  for (double ratio : {0.001, 0.01, 0.05, 0.1, 0.25}) {
    MutantRecord r = mutate(page, ratio, all_kinds(), 11);
    EXPECT_EQ(r.ops.size(), static_cast<std::size_t>(std::llround(ratio * n)))
        << ratio;
    EXPECT_EQ(r.requested_ratio, ratio);
  }
}

TEST(MutateTest, InvariantsHoldAcrossKindsAndPages) {
  for (std::uint64_t p = 0; p < 12; ++p) {
    DomTree page = signed_page(100 + p, 300);
    for (MutationKind k : all_kinds()) {
      MutantRecord r = mutate(page, 0.1, {k}, p * 31 + static_cast<int>(k));
      SCOPED_TRACE(std::string(kind_name(k)) + " page " + std::to_string(p));
      for (const auto& op : r.ops) EXPECT_EQ(op.kind, k);
      expect_consistent(r);
    }
    MutantRecord mixed = mutate(page, 0.25, all_kinds(), p);
    expect_consistent(mixed);
  }
}

TEST(MutateTest, NonStructuralKindsKeepTheShape) {
  DomTree page = signed_page(4);
  for (auto cat : {MutationCategory::kAttribute, MutationCategory::kContent}) {
    MutantRecord r = mutate(page, 0.25, kinds_in(cat), 5);
    ASSERT_EQ(r.mutant.size(), page.size());
    for (const DomNode& n : page.nodes()) {
      const DomNode& m = r.mutant[n.id];
      EXPECT_EQ(m.tag, n.tag);
      EXPECT_EQ(m.parent, n.parent);
      EXPECT_EQ(r.ground_truth.at(*n.signature()), n.id);
      if (cat == MutationCategory::kAttribute) {
        EXPECT_EQ(m.own_text, n.own_text);
      } else {
        EXPECT_EQ(m.attributes, n.attributes);
      }
    }
  }
}

TEST(MutateTest, WrapInsertsFreshParent) {
  DomTree page = signed_page(5);
  MutantRecord r = mutate(page, 0.05, {MutationKind::kStructureWrap}, 5);
  ASSERT_FALSE(r.ops.empty());
  for (const auto& op : r.ops) {
    NodeId t = r.ground_truth.at(op.target);
    ASSERT_NE(t, kNoNode);
    const DomNode& wrapper = r.mutant[r.mutant[t].parent];
    EXPECT_EQ(*wrapper.signature(), op.payload["signature"]);
    EXPECT_EQ(wrapper.tag, op.payload["wrapper"]);
    EXPECT_THAT(wrapper.tag, ::testing::AnyOf("div", "span"));
  }
  EXPECT_EQ(r.mutant.size(), page.size() + r.ops.size());
}

TEST(MutateTest, UnwrapSplicesChildrenIntoParent) {
  DomTree page = signed_page(6);
  MutantRecord r = mutate(page, 0.02, {MutationKind::kStructureUnwrap}, 6);
  ASSERT_FALSE(r.ops.empty());
  EXPECT_EQ(r.mutant.size(), page.size() - r.ops.size());
  for (const auto& op : r.ops) {
    EXPECT_EQ(r.ground_truth.at(op.target), kNoNode);
  }
  expect_consistent(r);
}

TEST(MutateTest, DuplicateAddsCloneAfterTarget) {
  DomTree page = signed_page(7);
  MutantRecord r = mutate(page, 0.02, {MutationKind::kStructureDuplicate}, 7);
  ASSERT_FALSE(r.ops.empty());
  EXPECT_GT(r.mutant.size(), page.size());
  const auto& op = r.ops.front();
  NodeId t = r.ground_truth.at(op.target);
  NodeId clone = r.mutant.find_signature(op.payload["clone"].get<std::string>());
  ASSERT_NE(clone, kNoNode);
  EXPECT_EQ(r.mutant[clone].tag, r.mutant[t].tag);
  EXPECT_EQ(r.mutant[clone].parent, r.mutant[t].parent);
  EXPECT_GT(clone, t);
}

TEST(MutateTest, DeterministicUnderSeed) {
  DomTree page = signed_page(8);
  MutantRecord a = mutate(page, 0.2, all_kinds(), 99);
  MutantRecord b = mutate(page, 0.2, all_kinds(), 99);
  MutantRecord c = mutate(page, 0.2, all_kinds(), 100);
  EXPECT_EQ(a.mutant, b.mutant);
  EXPECT_EQ(record_to_json(a), record_to_json(b));
  EXPECT_NE(record_to_json(a)["ops"], record_to_json(c)["ops"]);
}

TEST(MutateTest, RejectsBadInput) {
  DomTree page = signed_page(9, 100);
  EXPECT_THROW(mutate(page, -0.1, all_kinds(), 1), MutationError);
  EXPECT_THROW(mutate(page, 1.5, all_kinds(), 1), MutationError);
  EXPECT_THROW(mutate(page, std::numeric_limits<double>::quiet_NaN(),
                      all_kinds(), 1),
               MutationError);
  EXPECT_THROW(mutate(page, 0.1, {}, 1), MutationError);
  DomTree unsigned_page = parse_html("<div><p>a</p></div>");
  EXPECT_THROW(mutate(unsigned_page, 0.1, all_kinds(), 1), MutationError);
  // A lone element has no sibling to swap with and nothing to restructure.
  DomTree lone = assign_signatures(
      parse_html("<p>x</p>", ParseConfig{.fragment = true}));
  EXPECT_THROW(mutate(lone, 1.0, {MutationKind::kStructureSwap}, 1),
               MutationError);
  // Other kinds are re-drawn when one has no eligible node.
  MutantRecord r = mutate(
      lone, 1.0, {MutationKind::kStructureSwap, MutationKind::kContentRemove},
      1);
  ASSERT_EQ(r.ops.size(), 1u);
  EXPECT_EQ(r.ops[0].kind, MutationKind::kContentRemove);
}

TEST(MutateTest, RecordJsonRoundTrip) {
  DomTree page = signed_page(10);
  MutantRecord r = mutate(page, 0.1, all_kinds(), 10);
  auto j = record_to_json(r);
  EXPECT_THAT(j.items().begin().key(), "ops");
  MutantRecord back = record_from_json(j, r.original, r.mutant);
  EXPECT_EQ(back.ground_truth, r.ground_truth);
  EXPECT_EQ(back.ops.size(), r.ops.size());
  EXPECT_EQ(record_to_json(back), j);
  j["groundTruth"].begin().value() = 1 << 20;
  EXPECT_THROW(record_from_json(j, r.original, r.mutant), MutationError);
  EXPECT_THROW(record_from_json({{"ops", 3}}, r.original, r.mutant),
               MutationError);
}

TEST(DatasetTest, TenMutantsPerPageWithDistinctSeeds) {
  std::vector<DomTree> pages{signed_page(11)};
  auto records = generate_dataset(pages, 1234);
  ASSERT_EQ(records.size(), 10u);
  std::set<std::uint64_t> seeds;
  for (const auto& r : records) {
    seeds.insert(r.seed);
    EXPECT_GT(r.requested_ratio, 0.0);
    EXPECT_LE(r.requested_ratio, 0.25);
  }
  EXPECT_EQ(seeds.size(), 10u);
}

TEST(DatasetTest, DeterministicAndSignsPages) {
  std::vector<DomTree> pages{
      parse_html(synthesize_page(12, PageSynthConfig{.target_nodes = 200})),
      parse_html(synthesize_page(13, PageSynthConfig{.target_nodes = 200}))};
  DatasetConfig config;
  config.mutants_per_page = 3;
  auto a = generate_dataset(pages, 5, config);
  auto b = generate_dataset(pages, 5, config);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(record_to_json(a[i]), record_to_json(b[i]));
    expect_consistent(a[i]);
  }
}

TEST(DatasetTest, ConstrainedModeUsesOneKindPerMutant) {
  std::vector<DomTree> pages{signed_page(14, 300)};
  DatasetConfig config;
  config.constrained = true;
  auto records = generate_dataset(pages, 77, config);
  std::set<MutationKind> kinds_seen;
  for (const auto& r : records) {
    ASSERT_FALSE(r.ops.empty());
    for (const auto& op : r.ops) EXPECT_EQ(op.kind, r.ops.front().kind);
    kinds_seen.insert(r.ops.front().kind);
  }
  EXPECT_GT(kinds_seen.size(), 1u);
}

TEST(DatasetTest, RejectsEmptyInput) {
  EXPECT_THROW(generate_dataset({}, 1), MutationError);
  DatasetConfig bad;
  bad.max_ratio = 1.5;
  EXPECT_THROW(generate_dataset({signed_page(15, 50)}, 1, bad), MutationError);
}

}  // namespace
}  // namespace erratum

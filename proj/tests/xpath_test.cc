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

#include <random>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "erratum/dom.h"
#include "erratum/error.h"
#include "erratum/xpath.h"
#include "test_support.h"

namespace erratum {
namespace {

using ::erratum::testing::find_node;
using ::erratum::testing::load_page;
using ::erratum::testing::random_tree;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

TEST(AbsoluteXPathTest, SubmitInputUnderDocument) {
  DomTree t = load_page("login-form.html");
  NodeId submit = t[find_node(t, "form")].children[1];
  EXPECT_EQ(absolute_xpath(t, submit), "/html[1]/body[1]/form[1]/input[2]");
}

TEST(AbsoluteXPathTest, Root) {
  DomTree t = parse_html("<html><body></body></html>");
  EXPECT_EQ(absolute_xpath(t, t.root()), "/html[1]");
}

TEST(AbsoluteXPathTest, FigureLink) {
  DomTree t = load_page("sample-old.html");
  EXPECT_EQ(absolute_xpath(t, find_node(t, "a")),
            "/html[1]/body[1]/div[1]/div[2]/a[1]");
}

TEST(AbsoluteXPathTest, UnknownNode) {
  DomTree t = parse_html("<p></p>", ParseConfig{.fragment = true});
  EXPECT_THROW(absolute_xpath(t, 1), InvalidNodeError);
  EXPECT_THROW(absolute_xpath(t, -1), InvalidNodeError);
}

class FormXPathTest : public ::testing::Test {
 protected:
  DomTree form_ = load_page("login-form.html", /*fragment=*/true);
  NodeId submit_ = 2;
};

TEST_F(FormXPathTest, PositionalSelectsSubmit) {
  EXPECT_THAT(eval_xpath(form_, "/form/input[2]"), ElementsAre(submit_));
}

TEST_F(FormXPathTest, AttributePredicate) {
  EXPECT_THAT(eval_xpath(form_, "input[@type=\"submit\"]"),
              ElementsAre(submit_));
  EXPECT_THAT(eval_xpath(form_, "input[@type='submit']"),
              ElementsAre(submit_));
}

TEST_F(FormXPathTest, ValueComparisonIsCaseSensitive) {
  EXPECT_THAT(eval_xpath(form_, "/form/input[@value=\"Send\"]"), IsEmpty());
  EXPECT_THAT(eval_xpath(form_, "/form/input[@value=\"send\"]"),
              ElementsAre(submit_));
}

TEST_F(FormXPathTest, OutOfRangePosition) {
  EXPECT_THAT(eval_xpath(form_, "/form/input[3]"), IsEmpty());
  EXPECT_THAT(eval_xpath(form_, "/form/input[0]"), IsEmpty());
  EXPECT_THAT(eval_xpath(form_, "/div/input[1]"), IsEmpty());
}

TEST_F(FormXPathTest, UnindexedStepSelectsAll) {
  EXPECT_THAT(eval_xpath(form_, "/form/input"), ElementsAre(1, 2));
  EXPECT_THAT(eval_xpath(form_, "/form[1]"), ElementsAre(0));
}

TEST_F(FormXPathTest, PredicatesApplyInSequence) {
  // Position is counted within the already filtered node list.
  EXPECT_THAT(eval_xpath(form_, "/form/input[@name=\"username\"][1]"),
              ElementsAre(1));
  EXPECT_THAT(eval_xpath(form_, "/form/input[2][@type=\"submit\"]"),
              ElementsAre(submit_));
  EXPECT_THAT(eval_xpath(form_, "/form/input[@type=\"submit\"][2]"),
              IsEmpty());
}

TEST(EvalXPathTest, UnsupportedSyntax) {
  DomTree t = parse_html("<p></p>", ParseConfig{.fragment = true});
  for (const char* q : {"//p", "/p//a", "/p/*", "/p/..", "./p", "/p/@id",
                        "/p[last()]", "/p[@id]", "/p[@a='x' and @b='y']",
                        "/p | /a", "child::p", "count(/p)", "/p[position()=1]"}) {
    EXPECT_THROW(eval_xpath(t, q), UnsupportedXPathError) << q;
  }
}

TEST(EvalXPathTest, SyntaxErrors) {
  DomTree t = parse_html("<p></p>", ParseConfig{.fragment = true});
  for (const char* q : {"", "/", "/p/", "/p[1", "/p[@id='x]", "/p]",
                        "/p[@id='x'"}) {
    EXPECT_THROW(eval_xpath(t, q), XPathSyntaxError) << q;
  }
}

TEST(EvalXPathTest, MultipleContextNodesStayInDocumentOrder) {
  DomTree t = parse_html(
      "<ul><li><a>1</a><a>2</a></li><li><a>3</a></li></ul>",
      ParseConfig{.fragment = true});
  EXPECT_THAT(eval_xpath(t, "/ul/li/a[1]"), ElementsAre(2, 5));
  EXPECT_THAT(eval_xpath(t, "/ul/li/a"), ElementsAre(2, 3, 5));
}

TEST(XPathRoundTripTest, EveryNodeOfBundledPages) {
  for (const char* page : {"sample-old.html", "sample-new.html", "login-form.html"}) {
    DomTree t = load_page(page);
    for (const DomNode& n : t.nodes()) {
      EXPECT_THAT(eval_xpath(t, absolute_xpath(t, n.id)), ElementsAre(n.id))
          << page << " node " << n.id;
    }
  }
}

TEST(XPathRoundTripTest, RandomTrees) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    DomTree t = random_tree(rng, 1 + i % 40, /*alphabet=*/3);
    for (const DomNode& n : t.nodes()) {
      ASSERT_THAT(eval_xpath(t, absolute_xpath(t, n.id)), ElementsAre(n.id));
    }
  }
}

}  // namespace
}  // namespace erratum

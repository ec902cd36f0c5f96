// Copyright 2026-present the raisekit authors
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

#include <gtest/gtest.h>

#include <random>

#include "raisekit/core/errors.hpp"
#include "raisekit/decompose/decomposer.hpp"
#include "raisekit/llm/mock_backends.hpp"
#include "support/test_support.hpp"

namespace raisekit::decompose {
namespace {

TEST(ParsePlanTest, WellFormedPairs) {
  const auto plan = parse_plan(
      "Subquestion 1: What is the dissociation of Ba(OH)2?\n"
      "Search Query for Subquestion 1: barium hydroxide dissociation in water\n"
      "Subquestion 2: What is the pOH?\n"
      "Search Query for Subquestion 2: pOH from hydroxide concentration\n");
  ASSERT_EQ(plan.size(), 2u);
  EXPECT_EQ(plan.steps[0].subquestion, "What is the dissociation of Ba(OH)2?");
  EXPECT_EQ(plan.steps[0].search_query, "barium hydroxide dissociation in water");
  EXPECT_EQ(plan.steps[1].index, 2);
  EXPECT_EQ(plan.steps[1].search_query, "pOH from hydroxide concentration");
}

TEST(ParsePlanTest, BoldAndListMarkupTolerated) {
  const auto plain = parse_plan(
      "Subquestion 1: A?\nSearch Query for Subquestion 1: a\n");
  const auto bold = parse_plan(
      "**Subquestion 1:** A?\n- **Search Query for Subquestion 1**: a\n");
  EXPECT_EQ(plain, bold);
  const auto numbered = parse_plan("1. subquestion 1: A?\n2) SEARCH QUERY FOR SUBQUESTION 1: a");
  EXPECT_EQ(plain, numbered);
}

TEST(ParsePlanTest, ResortsByIndex) {
  const auto plan = parse_plan(
      "Subquestion 2: second\nSearch Query for Subquestion 2: q2\n"
      "Subquestion 1: first\nSearch Query for Subquestion 1: q1\n");
  ASSERT_EQ(plan.size(), 2u);
  EXPECT_EQ(plan.steps[0].subquestion, "first");
  EXPECT_EQ(plan.steps[1].subquestion, "second");
}

TEST(ParsePlanTest, DropsPairWithEmptyQueryAndRenumbers) {
  const auto plan = parse_plan(
      "Subquestion 1: one\nSearch Query for Subquestion 1: q1\n"
      "Subquestion 2: two\nSearch Query for Subquestion 2:\n\n"
      "Subquestion 3: three\nSearch Query for Subquestion 3: q3\n");
  ASSERT_EQ(plan.size(), 2u);
  EXPECT_EQ(plan.steps[1].index, 2);
  EXPECT_EQ(plan.steps[1].subquestion, "three");
}

TEST(ParsePlanTest, TruncatesToMaxSteps) {
  std::string raw;
  for (int i = 1; i <= 10; ++i) {
    raw += "Subquestion " + std::to_string(i) + ": s" + std::to_string(i) + "\n";
    raw += "Search Query for Subquestion " + std::to_string(i) + ": q" + std::to_string(i) + "\n";
  }
  const auto plan = parse_plan(raw, 8);
  ASSERT_EQ(plan.size(), 8u);
  EXPECT_EQ(plan.steps.back().subquestion, "s8");
}

TEST(ParsePlanTest, MultiLineSubquestions) {
  const auto plan = parse_plan(
      "Subquestion 1: Given the setup,\n  what is the force\non the block?\n"
      "Search Query for Subquestion 1: block force\n");
  EXPECT_EQ(plan.steps[0].subquestion, "Given the setup,\nwhat is the force\non the block?");
}

TEST(ParsePlanTest, NoCompletePairIsAnError) {
  EXPECT_THROW(parse_plan("I cannot decompose this."), PlanParseError);
  EXPECT_THROW(parse_plan("Subquestion 1: lonely\n"), PlanParseError);
  EXPECT_THROW(parse_plan(""), PlanParseError);
}

TEST(ParsePlanTest, RoundTripOverRandomPlans) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    DecompositionPlan plan;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 1; i <= n; ++i) {
      plan.steps.push_back({i, "sub " + std::to_string(rng() % 1000) + "?",
                            "query " + std::to_string(rng() % 1000)});
    }
    EXPECT_EQ(parse_plan(format_plan(plan)), plan);
  }
}

DecomposeResult run_decompose(std::vector<std::string> script, int retries = 2) {
  auto backend = std::make_shared<llm::ScriptedBackend>(std::move(script));
  llm::Gateway gw(backend);
  const auto kit = prompt::PromptKit::load_default();
  auto q = testing::make_question("q", "stem", {"a", "b", "c", "d"});
  DecomposeOptions o;
  o.retries = retries;
  return decompose(q, gw, kit, o);
}

TEST(DecomposeTest, SucceedsFirstTime) {
  const auto r = run_decompose({"Subquestion 1: s\nSearch Query for Subquestion 1: q"});
  EXPECT_EQ(r.calls, 1);
  EXPECT_EQ(r.plan.size(), 1u);
}

TEST(DecomposeTest, RepromptsWithReminder) {
  auto backend = std::make_shared<llm::ScriptedBackend>(std::vector<std::string>{
      "garbage", "Subquestion 1: s\nSearch Query for Subquestion 1: q"});
  llm::Gateway gw(backend);
  const auto kit = prompt::PromptKit::load_default();
  auto q = testing::make_question("q", "stem", {"a", "b", "c", "d"});
  const auto r = decompose(q, gw, kit);
  EXPECT_EQ(r.calls, 2);
  const auto reqs = backend->requests();
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0].tag, "p1_decompose");
  EXPECT_EQ(reqs[1].prompt, reqs[0].prompt + "\n\n" + std::string(kFormatReminder));
}

TEST(DecomposeTest, FailsAfterRetriesCarryingRawText) {
  try {
    run_decompose({"bad 1", "bad 2", "bad 3"});
    FAIL();
  } catch (const DecompositionFailedError& e) {
    EXPECT_EQ(e.raw_text(), "bad 3");
  }
}

}  // namespace
}  // namespace raisekit::decompose

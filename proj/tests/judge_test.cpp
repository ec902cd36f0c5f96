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

#include <algorithm>
#include <random>

#include "raisekit/core/errors.hpp"
#include "raisekit/judge/judge.hpp"
#include "raisekit/llm/mock_backends.hpp"
#include "support/test_support.hpp"

namespace raisekit::judge {
namespace {

TEST(ParseRatingTest, CanonicalLabels) {
  const auto r = parse_rating("Helpfulness Rating: Fully relevant\nExplanation: gives the formula");
  EXPECT_EQ(r.level, kFull);
  EXPECT_EQ(r.explanation, "gives the formula");
  EXPECT_EQ(parse_rating("Helpfulness Rating: No relevance at all").level, kNotRelevant);
  EXPECT_EQ(parse_rating("Helpfulness Rating: Superficially relevant").level, kSuperficial);
  EXPECT_EQ(parse_rating("Helpfulness Rating: Partially relevant").level, kPartial);
}

TEST(ParseRatingTest, ToleratesCaseAndPunctuation) {
  EXPECT_EQ(parse_rating("helpfulness rating: superficially relevant.").level, kSuperficial);
  EXPECT_EQ(parse_rating("**Helpfulness Rating:** \"Partially relevant\"").level, kPartial);
  EXPECT_EQ(parse_rating("Some preamble\n\nHELPFULNESS RATING: FULLY LOGICALLY RELEVANT").level,
            kFull);
}

TEST(ParseRatingTest, RejectsUnknownOrMissingLabels) {
  EXPECT_THROW(parse_rating("Rating: good"), JudgeParseError);
  EXPECT_THROW(parse_rating("Helpfulness Rating: excellent"), JudgeParseError);
  EXPECT_THROW(parse_rating(""), JudgeParseError);
}

// Random surface perturbations never change the parsed level.
TEST(ParseRatingTest, PerturbationsPreserveLevel) {
  const std::vector<std::pair<std::string, int>> labels = {
      {"No relevance at all", 1},
      {"Superficially relevant", 2},
      {"Partially relevant", 3},
      {"Fully relevant", 4}};
  const std::vector<std::string> wraps = {"", "*", "**", "\"", "'", "_"};
  const std::vector<std::string> tails = {"", ".", "!", " ", "\t"};
  std::mt19937 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& [label, level] = labels[rng() % labels.size()];
    std::string text = label;
    for (char& c : text) {
      if (rng() % 2) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      else c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    const auto& w = wraps[rng() % wraps.size()];
    const std::string head = (rng() % 2) ? "Helpfulness Rating:" : "helpfulness rating :";
    const std::string reply = std::string(rng() % 2 ? "Reasoning first.\n" : "") + head +
                              std::string(rng() % 3, ' ') + w + text + w +
                              tails[rng() % tails.size()] + "\nExplanation: because";
    EXPECT_EQ(parse_rating(reply).level, level) << reply;
  }
}

TEST(RateTest, ReasksOnceThenReportsUnrated) {
  auto backend = std::make_shared<llm::ScriptedBackend>(
      std::vector<std::string>{"Rating: good", "Rating: still good"});
  llm::Gateway gw(backend);
  const auto kit = prompt::PromptKit::load_default();
  const auto out = rate("Q", "sub", "doc", gw, kit);
  EXPECT_FALSE(out.rating.has_value());
  EXPECT_EQ(out.calls, 2);
  EXPECT_EQ(out.raw_text, "Rating: still good");
}

TEST(RateTest, SecondAttemptCanSucceed) {
  auto backend = std::make_shared<llm::ScriptedBackend>(
      std::vector<std::string>{"??", "Helpfulness Rating: Partially relevant"});
  llm::Gateway gw(backend);
  const auto kit = prompt::PromptKit::load_default();
  const auto out = rate("Q", "sub", "doc", gw, kit);
  ASSERT_TRUE(out.rating.has_value());
  EXPECT_EQ(out.rating->level, kPartial);
  EXPECT_EQ(out.calls, 2);
  const auto prompt = backend->requests().at(0).prompt;
  EXPECT_NE(prompt.find("- Subquestion: sub"), std::string::npos);
  EXPECT_NE(prompt.find("- Retrieved Document: doc"), std::string::npos);
}

TEST(RateTest, EmptyInputsAreRejected) {
  llm::Gateway gw(std::make_shared<llm::ScriptedBackend>(std::vector<std::string>{}));
  const auto kit = prompt::PromptKit::load_default();
  EXPECT_THROW(rate("Q", "sub", "", gw, kit), UsageError);
}

TEST(DistributionTest, HandComputedFractions) {
  const std::vector<int> levels{4, 4, 2, 1};
  const auto d = distribution(levels);
  EXPECT_DOUBLE_EQ(d.fraction(1), 0.25);
  EXPECT_DOUBLE_EQ(d.fraction(2), 0.25);
  EXPECT_DOUBLE_EQ(d.fraction(3), 0.0);
  EXPECT_DOUBLE_EQ(d.fraction(4), 0.5);
  EXPECT_EQ(d.rated, 4u);
  EXPECT_EQ(d.unrated, 0u);
}

TEST(DistributionTest, EmptyIsAnError) {
  EXPECT_THROW(distribution(std::span<const int>{}), ScoringError);
  const std::vector<std::optional<RelevanceRating>> none(3);
  EXPECT_THROW(distribution(none), ScoringError);
}

TEST(DistributionTest, UnratedAreCountedButExcluded) {
  std::vector<std::optional<RelevanceRating>> r{RelevanceRating{4, ""}, std::nullopt,
                                                RelevanceRating{2, ""}};
  const auto d = distribution(r);
  EXPECT_EQ(d.rated, 2u);
  EXPECT_EQ(d.unrated, 1u);
  EXPECT_DOUBLE_EQ(d.fraction(4), 0.5);
  EXPECT_DOUBLE_EQ(d.fraction(2), 0.5);
}

TEST(DistributionTest, SumsToOneAndIsPermutationInvariant) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> levels(1 + rng() % 50);
    for (auto& l : levels) l = 1 + static_cast<int>(rng() % 4);
    const auto a = distribution(levels);
    double sum = 0;
    for (double f : a.fractions) sum += f;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    std::shuffle(levels.begin(), levels.end(), rng);
    const auto b = distribution(levels);
    EXPECT_EQ(a.fractions, b.fractions);
  }
}

ReasoningTrace trace_with_docs() {
  ReasoningTrace t;
  t.question_id = "q1";
  t.question_stem = "Stem?";
  t.strategy.kind = StrategyKind::kRaise;
  t.plan = DecompositionPlan{{{1, "s1", "q1"}, {2, "s2", "q2"}}};
  StepRecord a;
  a.index = 1;
  a.subquestion = "s1";
  a.retrieved = {{{"p1", "T1", "alpha"}, 0.9}, {{"p2", "T2", "beta"}, 0.88}};
  StepRecord b;
  b.index = 2;
  b.subquestion = "s2";
  b.retrieved = {{{"p3", "T3", "gamma"}, 0.95}};
  t.steps = {a, b};
  return t;
}

TEST(CollectItemsTest, OneItemPerRetrievedPassage) {
  const std::vector<ReasoningTrace> traces{trace_with_docs()};
  const auto items = collect_items(traces);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[0].passage_id, "p1");
  EXPECT_EQ(items[0].subquestion, "s1");
  EXPECT_EQ(items[2].step_index, 2);
  EXPECT_NE(items[1].document.find("beta"), std::string::npos);
}

TEST(SummarizeTest, StepLevelIsTheMaximum) {
  const std::vector<ReasoningTrace> traces{trace_with_docs()};
  const auto items = collect_items(traces);
  std::vector<JudgedItem> judged;
  const int levels[] = {1, 3, 2};
  for (std::size_t i = 0; i < items.size(); ++i) {
    judged.push_back({items[i], {RelevanceRating{levels[i], ""}, 1, ""}});
  }
  const auto summary = summarize(judged);
  ASSERT_EQ(summary.size(), 1u);
  EXPECT_EQ(summary[0].documents, 3u);
  EXPECT_EQ(summary[0].steps, 2u);
  EXPECT_DOUBLE_EQ(summary[0].per_document->fraction(1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(summary[0].per_step->fraction(3), 0.5);
  EXPECT_DOUBLE_EQ(summary[0].per_step->fraction(2), 0.5);
}

TEST(JudgeItemsTest, StagedMockRatingsRoundTrip) {
  llm::Gateway gw(std::make_shared<llm::StagedMockBackend>());
  const auto kit = prompt::PromptKit::load_default();
  const std::vector<ReasoningTrace> traces{trace_with_docs()};
  const auto items = collect_items(traces);
  const auto judged = judge_items(items, gw, kit);
  ASSERT_EQ(judged.size(), items.size());
  for (std::size_t i = 0; i < judged.size(); ++i) {
    EXPECT_EQ(judged[i].item.passage_id, items[i].passage_id);
    ASSERT_TRUE(judged[i].outcome.rating.has_value());
    const auto back = judged_item_from_json(to_json(judged[i]));
    EXPECT_EQ(back.outcome.rating, judged[i].outcome.rating);
    EXPECT_EQ(back.item.passage_id, judged[i].item.passage_id);
  }
  testing::TempDir dir;
  write_judgement(dir.path(), judged);
  EXPECT_TRUE(std::filesystem::exists(dir / "ratings.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.md"));
}

}  // namespace
}  // namespace raisekit::judge

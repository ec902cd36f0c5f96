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

#include "raisekit/core/errors.hpp"
#include "raisekit/prompt/prompt_kit.hpp"
#include "support/test_support.hpp"

namespace raisekit::prompt {
namespace {

const PromptKit& kit() {
  static const PromptKit k = PromptKit::load_default();
  return k;
}

Bindings bind_all(Stage stage, const std::string& prefix = "value-") {
  Bindings b;
  for (const auto& name : kit().get(stage).placeholders()) b[name] = prefix + name;
  return b;
}

TEST(PromptKitTest, EveryStageLoadsAndRendersFully) {
  for (auto stage : kAllStages) {
    const auto& t = kit().get(stage);
    EXPECT_FALSE(t.placeholders().empty()) << stage_id(stage);
    const auto out = kit().render(stage, bind_all(stage));
    EXPECT_EQ(out.find("{{"), std::string::npos) << stage_id(stage);
    for (const auto& name : t.placeholders()) {
      EXPECT_NE(out.find("value-" + name), std::string::npos) << name;
    }
  }
}

TEST(PromptKitTest, StageIdsRoundTrip) {
  for (auto stage : kAllStages) EXPECT_EQ(parse_stage(stage_id(stage)), stage);
  EXPECT_FALSE(parse_stage("p9").has_value());
}

TEST(PromptKitTest, DecompositionPromptCarriesFormatRules) {
  auto q = testing::make_question("q", "What is the pH of 0.1 M Ba(OH)2?",
                                  {"13.3", "12.0", "1.0", "7.0"});
  const auto out =
      kit().render(Stage::kDecompose, {{"question", q.stem}, {"choices", render_choices(q)}});
  EXPECT_NE(out.find("STRICT FORMAT REQUIREMENTS"), std::string::npos);
  EXPECT_NE(out.find(q.stem), std::string::npos);
  EXPECT_NE(out.find("(A) 13.3\n(B) 12.0\n(C) 1.0\n(D) 7.0"), std::string::npos);
}

TEST(PromptKitTest, SubanswerAtFirstStepHasEmptyPreviousBlock) {
  Bindings b = bind_all(Stage::kSubanswer);
  b["previous"] = render_solved_steps({});
  b["documents"] = render_documents({});
  const auto out = kit().render(Stage::kSubanswer, b);
  EXPECT_NE(out.find("Previous subquestions and their solutions:\n\n"), std::string::npos);
  EXPECT_NE(out.find("Documents:\nNo documents retrieved."), std::string::npos);
}

TEST(PromptKitTest, JudgeTemplateHasFullRubric) {
  const auto& body = kit().get(Stage::kJudge).body();
  for (const char* s : {"No relevance at all", "Superficially relevant", "Partially relevant",
                        "Fully relevant", "Helpfulness Rating:"}) {
    EXPECT_NE(body.find(s), std::string::npos) << s;
  }
}

TEST(PromptKitTest, GenerationStagesEndOnTheirCue) {
  for (auto stage : {Stage::kStepBackPrinciple, Stage::kHydeGen}) {
    EXPECT_NE(kit().get(stage).body().find("End of generation"), std::string::npos)
        << stage_id(stage);
  }
  // The logical-query prompt ends on an "Explanation:" cue instead; the forge
  // still strips a sentinel if the model emits one.
  const auto& p2 = kit().get(Stage::kLogicalQuery).body();
  EXPECT_NE(p2.find("essential scientific or mathematical explanation"), std::string::npos);
  const auto cue = p2.rfind("Explanation:");
  ASSERT_NE(cue, std::string::npos);
  EXPECT_EQ(p2.find_first_not_of(" \n", cue + 12), std::string::npos);
}

TEST(PromptTemplateTest, MissingBindingNamesPlaceholder) {
  PromptTemplate t(Stage::kCot, "Q: {{question}}\n{{choices}}");
  try {
    t.render({{"question", "x"}});
    FAIL();
  } catch (const TemplateError& e) {
    EXPECT_NE(std::string(e.what()).find("choices"), std::string::npos);
  }
}

TEST(PromptTemplateTest, SubstitutesVerbatimInOnePass) {
  PromptTemplate t(Stage::kCot, "[{{question}}] [{{choices}}]");
  // Values that look like placeholders are not re-expanded.
  EXPECT_EQ(t.render({{"question", "{{choices}}"}, {"choices", "$1 \\n"}}),
            "[{{choices}}] [$1 \\n]");
  EXPECT_EQ(t.placeholders(), (std::vector<std::string>{"question", "choices"}));
}

TEST(PromptTemplateTest, InjectiveInBindings) {
  PromptTemplate t(Stage::kCot, "{{question}}|{{choices}}");
  EXPECT_NE(t.render({{"question", "a"}, {"choices", "b"}}),
            t.render({{"question", "a"}, {"choices", "c"}}));
}

TEST(PromptKitTest, LoadFromDirectoryOverridesAndMissingFileFails) {
  testing::TempDir dir;
  for (auto stage : kAllStages) {
    testing::write_file(dir / (std::string(stage_id(stage)) + ".txt"),
                        "custom {{question}}\n");
  }
  const auto custom = PromptKit::load(dir.path());
  EXPECT_EQ(custom.render(Stage::kCot, {{"question", "x"}}), "custom x");
  std::filesystem::remove(dir / "judge.txt");
  EXPECT_THROW(PromptKit::load(dir.path()), TemplateError);
}

TEST(RenderChoicesTest, OneLinePerChoice) {
  auto q = testing::make_question("q", "s", {"a", "b", "c", "d", "e"});
  EXPECT_EQ(render_choices(q), "(A) a\n(B) b\n(C) c\n(D) d\n(E) e");
}

TEST(RenderDocumentsTest, TitleDashTextWithBlankLines) {
  std::vector<ScoredPassage> docs{{{"1", "Gas laws", "PV = nRT."}, 0.9},
                                  {{"2", "Boyle", "P1V1 = P2V2."}, 0.85}};
  EXPECT_EQ(render_documents(docs), "Gas laws — PV = nRT.\n\nBoyle — P1V1 = P2V2.");
  EXPECT_EQ(render_documents({}), "No documents retrieved.");
}

TEST(RenderDocumentsTest, BudgetDropsWholeDocumentsAndCutsOnCodepoints) {
  std::vector<ScoredPassage> docs{{{"1", "A", std::string(50, 'x')}, 0.9},
                                  {{"2", "B", std::string(50, 'y')}, 0.8}};
  const auto first_only = render_documents(docs, 60);
  EXPECT_EQ(first_only, "A — " + std::string(50, 'x'));
  // A single overlong document is truncated, never split inside "—".
  const auto cut = render_documents(docs, 3);
  EXPECT_EQ(cut, "A ");
  EXPECT_LE(cut.size(), 3u);
}

TEST(RenderSolvedStepsTest, AlternatingBlocksInStepOrder) {
  std::vector<SolvedStep> steps{{1, "r1", "a1"}, {2, "r2", "a2"}};
  EXPECT_EQ(render_solved_steps(steps),
            "Subquestion 1: r1\nSubquestion 1 Solution: a1\n\n"
            "Subquestion 2: r2\nSubquestion 2 Solution: a2");
  EXPECT_EQ(render_solved_steps({}), "");
}

TEST(PrependDocumentsTest, Layout) {
  EXPECT_EQ(prepend_documents("D", "P"), "Documents:\nD\n\nP");
}

}  // namespace
}  // namespace raisekit::prompt

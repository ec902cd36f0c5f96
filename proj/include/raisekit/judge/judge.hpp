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

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raisekit/core/records.hpp"
#include "raisekit/core/types.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/prompt/prompt_kit.hpp"

namespace raisekit::judge {

// Rubric levels, 1 (worst) .. 4 (best).
inline constexpr int kNotRelevant = 1;
inline constexpr int kSuperficial = 2;
inline constexpr int kPartial = 3;
inline constexpr int kFull = 4;
inline constexpr int kLevels = 4;

std::string_view level_name(int level);  // "not_relevant", "superficial", ...

struct RelevanceRating {
  int level = kNotRelevant;
  std::string explanation;

  bool operator==(const RelevanceRating&) const = default;
};

// Parses the "Helpfulness Rating: <label>" line. Case, surrounding
// punctuation and markdown emphasis are ignored and labels match by prefix
// ("Fully logically relevant" -> 4). Throws JudgeParseError otherwise.
RelevanceRating parse_rating(std::string_view text);

struct JudgeOptions {
  int reasks = 1;  // additional attempts after an unparseable reply
  int max_tokens = 256;
  double temperature = 0.0;
  int workers = 4;
};

struct RateOutcome {
  std::optional<RelevanceRating> rating;  // nullopt = unrated
  int calls = 0;
  std::string raw_text;  // last reply
};

RateOutcome rate(const std::string& question, const std::string& subquestion,
                 const std::string& document, llm::Gateway& gateway,
                 const prompt::PromptKit& kit, const JudgeOptions& options = {});

struct Distribution {
  std::array<double, kLevels> fractions{};  // index 0 = level 1
  std::size_t rated = 0;
  std::size_t unrated = 0;

  double fraction(int level) const { return fractions.at(static_cast<std::size_t>(level - 1)); }
};

// Fractions over rated items only. Throws ScoringError when nothing is rated.
Distribution distribution(std::span<const std::optional<RelevanceRating>> ratings);
Distribution distribution(std::span<const int> levels);

// One (question, subquestion, document) triple pulled from a trace.
struct JudgeItem {
  std::string question_id;
  StrategyKind strategy = StrategyKind::kRaise;
  int step_index = 0;
  std::string passage_id;
  std::string question;
  std::string subquestion;
  std::string document;
};

// Every retrieved passage of every step (and of the single-shot record).
std::vector<JudgeItem> collect_items(std::span<const ReasoningTrace> traces);

struct JudgedItem {
  JudgeItem item;
  RateOutcome outcome;
};

// Rates items concurrently (options.workers); output order follows input.
std::vector<JudgedItem> judge_items(std::span<const JudgeItem> items, llm::Gateway& gateway,
                                    const prompt::PromptKit& kit,
                                    const JudgeOptions& options = {});

struct StrategySummary {
  StrategyKind strategy = StrategyKind::kRaise;
  std::optional<Distribution> per_document;
  // Each step takes the maximum level among its rated documents.
  std::optional<Distribution> per_step;
  std::size_t documents = 0;
  std::size_t steps = 0;
};

std::vector<StrategySummary> summarize(std::span<const JudgedItem> judged);

Json to_json(const JudgedItem& j);
JudgedItem judged_item_from_json(const Json& j);
Json to_json(const StrategySummary& s);

// ratings.jsonl + summary.json + summary.md under `dir`.
void write_judgement(const std::filesystem::path& dir, std::span<const JudgedItem> judged);

}  // namespace raisekit::judge

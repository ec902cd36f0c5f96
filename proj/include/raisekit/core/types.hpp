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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace raisekit {

// Choice label A, B, C, ... Only the first kMaxLabels letters are valid.
class Label {
 public:
  static constexpr std::size_t kMaxLabels = 10;

  static std::optional<Label> from_char(char c,
                                        std::size_t label_count = kMaxLabels);
  static Label from_index(std::size_t index);

  char letter() const noexcept { return letter_; }
  std::size_t index() const noexcept {
    return static_cast<std::size_t>(letter_ - 'A');
  }
  std::string str() const { return std::string(1, letter_); }

  auto operator<=>(const Label&) const = default;

 private:
  explicit Label(char letter) : letter_(letter) {}
  char letter_ = 'A';
};

struct Choice {
  Label label;
  std::string text;
};

struct Question {
  std::string id;
  std::string stem;
  std::vector<Choice> choices;
  std::optional<Label> gold_label;
  std::optional<std::string> domain;
  std::string dataset;

  // Checks label contiguity A.. and that gold_label names a choice. The
  // MCQ benchmarks here use 4 choices; loaders for wider sets pass a larger
  // upper bound.
  void validate(std::size_t min_choices = 4, std::size_t max_choices = 4) const;

  std::optional<std::string> gold_text() const;
};

// Stem followed by the "(A) ..." choice lines.
std::string full_question_text(const Question& q);

struct PlanStep {
  int index = 0;  // 1-based
  std::string subquestion;
  std::string search_query;

  bool operator==(const PlanStep&) const = default;
};

struct DecompositionPlan {
  std::vector<PlanStep> steps;

  std::size_t size() const noexcept { return steps.size(); }
  void validate(std::size_t max_steps) const;

  bool operator==(const DecompositionPlan&) const = default;
};

enum class StrategyKind {
  kCot,
  kCotRag,
  kLeastToMost,
  kStepBack,
  kLeastToMostRag,
  kStepBackRag,
  kHyde,
  kRaise,
  kRaiseDirect,
};

inline constexpr StrategyKind kAllStrategyKinds[] = {
    StrategyKind::kCot,          StrategyKind::kCotRag,
    StrategyKind::kLeastToMost,  StrategyKind::kStepBack,
    StrategyKind::kLeastToMostRag, StrategyKind::kStepBackRag,
    StrategyKind::kHyde,         StrategyKind::kRaise,
    StrategyKind::kRaiseDirect,
};

std::string_view to_string(StrategyKind kind);
std::string_view display_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view name);

bool uses_retrieval(StrategyKind kind);
bool uses_decomposition(StrategyKind kind);
// RAISE and its ablation; excluded when picking the best baseline.
bool is_raise_family(StrategyKind kind);

struct StrategySpec {
  StrategyKind kind = StrategyKind::kRaise;
  int k = 10;
  double threshold = 0.84;
  int max_steps = 8;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const StrategySpec&) const = default;
};

struct LogicalQuery {
  int step_index = 0;
  std::string text;
  StrategyKind provenance = StrategyKind::kRaise;

  bool operator==(const LogicalQuery&) const = default;
};

struct SubAnswer {
  int step_index = 0;
  std::string text;

  bool operator==(const SubAnswer&) const = default;
};

struct Passage {
  std::string id;
  std::string title;
  std::string text;

  bool operator==(const Passage&) const = default;
};

struct ScoredPassage {
  Passage passage;
  double score = 0.0;

  bool operator==(const ScoredPassage&) const = default;
};

// One executed reasoning step. For Step-Back strategies `query` holds the
// principle text; for retrieval strategies it is the query actually embedded.
struct StepRecord {
  int index = 0;
  std::string subquestion;
  std::string search_query;
  std::optional<LogicalQuery> query;
  std::vector<ScoredPassage> retrieved;
  SubAnswer answer;
  std::vector<std::string> flags;

  bool operator==(const StepRecord&) const = default;
};

struct ReasoningTrace {
  std::string question_id;
  std::string dataset;
  std::optional<std::string> domain;
  std::optional<Label> gold_label;
  std::string question_stem;
  std::vector<std::string> choice_texts;

  StrategySpec strategy;
  std::optional<DecompositionPlan> plan;
  std::vector<StepRecord> steps;
  // Single-shot retrieval record for cot_rag and raise_direct.
  std::optional<StepRecord> direct;

  std::string final_text;
  std::optional<Label> final_label;
  std::vector<std::string> flags;
  // Set when the run aborted (e.g. backend unavailable); scored as incorrect.
  std::optional<std::string> error;

  // Wall-clock milliseconds per stage name. Not part of the persisted trace.
  std::map<std::string, double> timings_ms;
  int backend_calls = 0;
  int retrieval_calls = 0;

  void validate() const;
  bool has_flag(std::string_view flag) const;
};

}  // namespace raisekit

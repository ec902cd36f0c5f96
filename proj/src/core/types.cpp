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

#include "raisekit/core/types.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "raisekit/core/errors.hpp"

namespace raisekit {

std::optional<Label> Label::from_char(char c, std::size_t label_count) {
  label_count = std::min(label_count, kMaxLabels);
  if (c < 'A' || c >= static_cast<char>('A' + label_count)) {
    return std::nullopt;
  }
  return Label(c);
}

Label Label::from_index(std::size_t index) {
  if (index >= kMaxLabels) {
    throw InvariantError("choice index " + std::to_string(index) +
                         " exceeds the label range");
  }
  return Label(static_cast<char>('A' + index));
}

void Question::validate(std::size_t min_choices, std::size_t max_choices) const {
  if (id.empty()) throw InvariantError("question id is empty");
  if (choices.size() < min_choices || choices.size() > max_choices) {
    throw InvariantError("question " + id + " has " +
                         std::to_string(choices.size()) + " choices, expected " +
                         (min_choices == max_choices
                              ? std::to_string(min_choices)
                              : std::to_string(min_choices) + "-" +
                                    std::to_string(max_choices)));
  }
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (choices[i].label.index() != i) {
      throw InvariantError("question " + id + " choice labels are not A.. in order");
    }
  }
  if (gold_label && gold_label->index() >= choices.size()) {
    throw InvariantError("question " + id + " gold label " + gold_label->str() +
                         " names no choice");
  }
}

std::optional<std::string> Question::gold_text() const {
  if (!gold_label || gold_label->index() >= choices.size()) return std::nullopt;
  return choices[gold_label->index()].text;
}

std::string full_question_text(const Question& q) {
  std::string out = q.stem;
  for (const auto& c : q.choices) {
    out += "\n(";
    out += c.label.letter();
    out += ") ";
    out += c.text;
  }
  return out;
}

void DecompositionPlan::validate(std::size_t max_steps) const {
  if (steps.empty()) throw InvariantError("decomposition plan has no steps");
  if (steps.size() > max_steps) {
    throw InvariantError("decomposition plan has " + std::to_string(steps.size()) +
                         " steps, more than max_steps " + std::to_string(max_steps));
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (s.index != static_cast<int>(i + 1)) {
      throw InvariantError("decomposition plan indices are not contiguous from 1");
    }
    if (s.subquestion.empty() || s.search_query.empty()) {
      throw InvariantError("decomposition step " + std::to_string(s.index) +
                           " has empty text");
    }
  }
}

namespace {

struct KindInfo {
  StrategyKind kind;
  std::string_view id;
  std::string_view display;
  bool retrieval;
  bool decomposition;
};

constexpr std::array<KindInfo, 9> kKinds = {{
    {StrategyKind::kCot, "cot", "CoT", false, false},
    {StrategyKind::kCotRag, "cot_rag", "CoT+RAG", true, false},
    {StrategyKind::kLeastToMost, "least_to_most", "Least-to-Most", false, true},
    {StrategyKind::kStepBack, "step_back", "Step-Back", false, true},
    {StrategyKind::kLeastToMostRag, "least_to_most_rag", "Least-to-Most+RAG", true, true},
    {StrategyKind::kStepBackRag, "step_back_rag", "Step-Back+RAG", true, true},
    {StrategyKind::kHyde, "hyde", "HyDE", true, true},
    {StrategyKind::kRaise, "raise", "RAISE", true, true},
    {StrategyKind::kRaiseDirect, "raise_direct", "RAISE-Direct", true, false},
}};

const KindInfo& info(StrategyKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw InvariantError("unknown strategy kind");
}

}  // namespace

std::string_view to_string(StrategyKind kind) { return info(kind).id; }
std::string_view display_name(StrategyKind kind) { return info(kind).display; }

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.id == name) return k.kind;
  }
  return std::nullopt;
}

bool uses_retrieval(StrategyKind kind) { return info(kind).retrieval; }
bool uses_decomposition(StrategyKind kind) { return info(kind).decomposition; }
bool is_raise_family(StrategyKind kind) {
  return kind == StrategyKind::kRaise || kind == StrategyKind::kRaiseDirect;
}

void StrategySpec::validate() const {
  if (k < 1) throw UsageError("retrieval k must be >= 1");
  if (threshold < -1.0 || threshold > 1.0) {
    throw UsageError("retrieval threshold must lie in [-1, 1]");
  }
  if (max_steps < 1) throw UsageError("max_steps must be >= 1");
}

void ReasoningTrace::validate() const {
  if (plan && steps.size() != plan->size()) {
    throw InvariantError("trace " + question_id +
                         ": step count differs from plan length");
  }
  if (!plan && !steps.empty()) {
    throw InvariantError("trace " + question_id + ": steps without a plan");
  }
}

bool ReasoningTrace::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

}  // namespace raisekit

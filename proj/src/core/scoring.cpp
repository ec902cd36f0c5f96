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

#include "raisekit/core/scoring.hpp"

#include <unordered_map>

#include "raisekit/core/errors.hpp"

namespace raisekit {

namespace {

void add(ScoreTally& t, const ReasoningTrace& trace, Label gold,
         const std::optional<std::string>& domain) {
  const bool correct = trace.final_label && *trace.final_label == gold;
  ++t.n;
  if (correct) ++t.correct;
  if (!trace.final_label) ++t.unparsed;
  auto& d = t.per_domain[domain.value_or("unknown")];
  ++d.n;
  if (correct) ++d.correct;
}

}  // namespace

ScoreTally tally(std::span<const ReasoningTrace> traces,
                 std::span<const Question> questions) {
  if (traces.empty()) throw ScoringError("no traces to score");
  std::unordered_map<std::string, const Question*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);

  ScoreTally t;
  for (const auto& trace : traces) {
    auto it = by_id.find(trace.question_id);
    if (it == by_id.end()) {
      throw ScoringError("trace references unknown question id '" + trace.question_id + "'");
    }
    const Question& q = *it->second;
    if (!q.gold_label) throw ScoringError("question " + q.id + " has no gold label");
    add(t, trace, *q.gold_label, q.domain);
  }
  return t;
}

double accuracy(std::span<const ReasoningTrace> traces,
                std::span<const Question> questions) {
  return tally(traces, questions).accuracy();
}

ScoreTally tally_recorded(std::span<const ReasoningTrace> traces) {
  if (traces.empty()) throw ScoringError("no traces to score");
  ScoreTally t;
  for (const auto& trace : traces) {
    if (!trace.gold_label) {
      throw ScoringError("trace " + trace.question_id + " carries no gold label");
    }
    add(t, trace, *trace.gold_label, trace.domain);
  }
  return t;
}

}  // namespace raisekit

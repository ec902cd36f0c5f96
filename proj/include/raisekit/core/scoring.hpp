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

#include <map>
#include <span>
#include <string>

#include "raisekit/core/types.hpp"

namespace raisekit {

struct DomainTally {
  int n = 0;
  int correct = 0;
};

struct ScoreTally {
  int n = 0;
  int correct = 0;
  int unparsed = 0;
  std::map<std::string, DomainTally> per_domain;

  double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

// Scores traces against the gold labels of `questions`. Unparsed answers are
// incorrect. Throws ScoringError for an unknown question id, a question
// without a gold label, or an empty trace list.
ScoreTally tally(std::span<const ReasoningTrace> traces,
                 std::span<const Question> questions);

double accuracy(std::span<const ReasoningTrace> traces,
                std::span<const Question> questions);

// Scores from the gold labels persisted inside the traces themselves.
ScoreTally tally_recorded(std::span<const ReasoningTrace> traces);

}  // namespace raisekit

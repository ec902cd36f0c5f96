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

#include <cstddef>
#include <string>
#include <string_view>

#include "raisekit/core/types.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/prompt/prompt_kit.hpp"

namespace raisekit::decompose {

inline constexpr std::size_t kDefaultMaxSteps = 8;

// Scans `raw` for "Subquestion N:" / "Search Query for Subquestion N:"
// headers (case-insensitive; list markers, '#' and bold markup around the
// header are ignored). A subquestion runs until the next header and may span
// lines; a search query ends at a blank line or the next header. Only pairs
// with both parts non-empty survive; they are ordered by N, renumbered 1..n
// and cut to max_steps. The first occurrence of a duplicated header wins.
// Throws PlanParseError when no complete pair remains.
DecompositionPlan parse_plan(std::string_view raw, std::size_t max_steps = kDefaultMaxSteps);

// Inverse of parse_plan for well-formed plans.
std::string format_plan(const DecompositionPlan& plan);

struct DecomposeOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  int retries = 2;
  int max_tokens = 1024;
  double temperature = 0.0;
};

struct DecomposeResult {
  DecompositionPlan plan;
  int calls = 0;
  std::string raw_text;
};

inline constexpr std::string_view kFormatReminder =
    "Remember: answer using EXACTLY the format \"Subquestion N: ...\" followed by "
    "\"Search Query for Subquestion N: ...\" for every subquestion.";

// Renders p1, asks the gateway, parses. Unparseable replies are re-asked up
// to `retries` times with kFormatReminder appended; after that
// DecompositionFailedError carries the last raw reply.
DecomposeResult decompose(const Question& q, llm::Gateway& gateway,
                          const prompt::PromptKit& kit, const DecomposeOptions& options = {});

}  // namespace raisekit::decompose

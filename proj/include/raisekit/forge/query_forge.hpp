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

#include <string>
#include <string_view>

#include "raisekit/core/types.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/prompt/prompt_kit.hpp"

namespace raisekit::forge {

inline constexpr std::string_view kEndSentinel = "End of generation";

// Text before the first (case-insensitive) sentinel, whitespace-trimmed.
// A dangling quote left by a quoted sentinel is dropped as well.
std::string strip_sentinel(std::string_view text);

struct ForgeOptions {
  int max_tokens = 1024;
  double temperature = 0.0;
};

// Each forge_* renders its prompt, calls the gateway once and throws
// ForgeError when nothing is left after stripping the sentinel.
LogicalQuery forge_logical(int step_index, const std::string& subquestion,
                           const std::string& search_query, llm::Gateway& gateway,
                           const prompt::PromptKit& kit, const ForgeOptions& options = {});

LogicalQuery forge_stepback(int step_index, const std::string& subquestion,
                            StrategyKind provenance, llm::Gateway& gateway,
                            const prompt::PromptKit& kit, const ForgeOptions& options = {});

LogicalQuery forge_hyde(int step_index, const std::string& subquestion, llm::Gateway& gateway,
                        const prompt::PromptKit& kit, const ForgeOptions& options = {});

LogicalQuery forge_identity(int step_index, const std::string& text, StrategyKind provenance);

// Retrieval text for single-shot CoT+RAG: stem plus choice lines.
std::string question_query_text(const Question& q);

struct ForgeOutcome {
  LogicalQuery query;
  int calls = 0;
  bool fell_back = false;
};

// Query for one decomposed step under `kind`:
//   raise           -> forge_logical(subquestion, search query)
//   step_back(_rag) -> forge_stepback(subquestion)
//   hyde            -> forge_hyde(subquestion)
//   least_to_most_rag -> forge_identity(subquestion)
// A ForgeError is retried once; a second one falls back to the identity
// query (the search query for raise, the subquestion otherwise).
ForgeOutcome forge_for_step(StrategyKind kind, const PlanStep& step, llm::Gateway& gateway,
                            const prompt::PromptKit& kit, const ForgeOptions& options = {});

// RAISE-Direct: one logical query over the whole question, same retry and
// fallback rule (falls back to the stem).
ForgeOutcome forge_direct(const Question& q, llm::Gateway& gateway,
                          const prompt::PromptKit& kit, const ForgeOptions& options = {});

}  // namespace raisekit::forge

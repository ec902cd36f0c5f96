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

#include "raisekit/forge/query_forge.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "raisekit/core/errors.hpp"

namespace raisekit::forge {

std::string strip_sentinel(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const std::size_t cut = lowered.find("end of generation");
  std::string_view s = text.substr(0, cut);
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  if (!s.empty() && s.back() == '"' && std::count(s.begin(), s.end(), '"') % 2 == 1) {
    s.remove_suffix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  }
  return std::string(s);
}

namespace {

LogicalQuery ask(prompt::Stage stage, const prompt::Bindings& bindings, int step_index,
                 StrategyKind provenance, llm::Gateway& gateway,
                 const prompt::PromptKit& kit, const ForgeOptions& options) {
  llm::CompletionRequest req;
  req.prompt = kit.render(stage, bindings);
  req.max_tokens = options.max_tokens;
  req.temperature = options.temperature;
  req.stop = {std::string(kEndSentinel)};
  req.tag = std::string(prompt::stage_id(stage));
  std::string text = strip_sentinel(gateway.complete(req).text);
  if (text.empty()) {
    throw ForgeError("stage " + req.tag + " produced no query text for step " +
                     std::to_string(step_index));
  }
  return LogicalQuery{step_index, std::move(text), provenance};
}

ForgeOutcome with_fallback(const std::function<LogicalQuery()>& attempt,
                           const LogicalQuery& fallback) {
  ForgeOutcome out;
  for (int i = 0; i < 2; ++i) {
    ++out.calls;
    try {
      out.query = attempt();
      return out;
    } catch (const ForgeError&) {
    }
  }
  out.query = fallback;
  out.fell_back = true;
  return out;
}

}  // namespace

LogicalQuery forge_logical(int step_index, const std::string& subquestion,
                           const std::string& search_query, llm::Gateway& gateway,
                           const prompt::PromptKit& kit, const ForgeOptions& options) {
  return ask(prompt::Stage::kLogicalQuery,
             {{"subquestion", subquestion}, {"search_query", search_query}}, step_index,
             StrategyKind::kRaise, gateway, kit, options);
}

LogicalQuery forge_stepback(int step_index, const std::string& subquestion,
                            StrategyKind provenance, llm::Gateway& gateway,
                            const prompt::PromptKit& kit, const ForgeOptions& options) {
  return ask(prompt::Stage::kStepBackPrinciple, {{"subquestion", subquestion}}, step_index,
             provenance, gateway, kit, options);
}

LogicalQuery forge_hyde(int step_index, const std::string& subquestion, llm::Gateway& gateway,
                        const prompt::PromptKit& kit, const ForgeOptions& options) {
  return ask(prompt::Stage::kHydeGen, {{"subquestion", subquestion}}, step_index,
             StrategyKind::kHyde, gateway, kit, options);
}

LogicalQuery forge_identity(int step_index, const std::string& text, StrategyKind provenance) {
  return LogicalQuery{step_index, text, provenance};
}

std::string question_query_text(const Question& q) { return full_question_text(q); }

ForgeOutcome forge_for_step(StrategyKind kind, const PlanStep& step, llm::Gateway& gateway,
                            const prompt::PromptKit& kit, const ForgeOptions& options) {
  switch (kind) {
    case StrategyKind::kRaise:
      return with_fallback(
          [&] {
            return forge_logical(step.index, step.subquestion, step.search_query, gateway, kit,
                                 options);
          },
          forge_identity(step.index, step.search_query, kind));
    case StrategyKind::kStepBack:
    case StrategyKind::kStepBackRag:
      return with_fallback(
          [&] { return forge_stepback(step.index, step.subquestion, kind, gateway, kit, options); },
          forge_identity(step.index, step.subquestion, kind));
    case StrategyKind::kHyde:
      return with_fallback(
          [&] { return forge_hyde(step.index, step.subquestion, gateway, kit, options); },
          forge_identity(step.index, step.subquestion, kind));
    case StrategyKind::kLeastToMostRag:
      return ForgeOutcome{forge_identity(step.index, step.subquestion, kind), 0, false};
    default:
      throw UsageError("strategy " + std::string(to_string(kind)) +
                       " does not forge per-step queries");
  }
}

ForgeOutcome forge_direct(const Question& q, llm::Gateway& gateway,
                          const prompt::PromptKit& kit, const ForgeOptions& options) {
  auto out = with_fallback(
      [&] {
        return forge_logical(1, full_question_text(q), q.stem, gateway, kit, options);
      },
      forge_identity(1, q.stem, StrategyKind::kRaiseDirect));
  out.query.provenance = StrategyKind::kRaiseDirect;
  return out;
}

}  // namespace raisekit::forge

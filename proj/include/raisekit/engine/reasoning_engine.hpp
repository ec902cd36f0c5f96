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
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raisekit/core/types.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/prompt/prompt_kit.hpp"
#include "raisekit/retrieval/embedder.hpp"
#include "raisekit/retrieval/vector_index.hpp"

namespace raisekit::engine {

// Trace flags.
inline constexpr std::string_view kFlagDecompositionFailed = "decomposition_failed";
inline constexpr std::string_view kFlagFallbackToCot = "fallback_to_cot";
inline constexpr std::string_view kFlagForgeFallback = "forge_fallback";
inline constexpr std::string_view kFlagRetrievalError = "retrieval_error";
inline constexpr std::string_view kFlagUnparsed = "unparsed";
inline constexpr std::string_view kFlagRunError = "run_error";

struct EngineConfig {
  int decompose_retries = 2;
  int max_tokens = 1024;
  double temperature = 0.0;
  std::size_t document_budget = prompt::kDefaultDocumentBudget;
  bool fallback_to_cot = false;
  int workers = 4;
};

// Optional per-question plan reuse across strategies. Off unless supplied.
class PlanCache {
 public:
  std::optional<DecompositionPlan> find(const std::string& question_id) const;
  void store(const std::string& question_id, const DecompositionPlan& plan);

 private:
  mutable std::mutex mu_;
  std::map<std::string, DecompositionPlan> plans_;
};

struct EngineDeps {
  llm::Gateway* gateway = nullptr;
  const prompt::PromptKit* prompts = nullptr;
  const retrieval::VectorIndex* index = nullptr;  // required by retrieval kinds
  retrieval::Embedder* embedder = nullptr;        // required by retrieval kinds
  PlanCache* plan_cache = nullptr;
};

// Runs one question under one strategy. Stages within a question are
// strictly sequential; separate questions may run concurrently on one engine.
class ReasoningEngine {
 public:
  ReasoningEngine(EngineDeps deps, EngineConfig config = {});

  // Throws on unrecoverable backend failure; recoverable stage failures are
  // recorded as trace flags.
  ReasoningTrace run(const Question& q, const StrategySpec& spec) const;

  // Traces in input order, `config.workers` questions in flight. A question
  // whose run threw yields a trace with kFlagRunError and `error` set.
  std::vector<ReasoningTrace> run_all(std::span<const Question> questions,
                                      const StrategySpec& spec) const;

  const EngineConfig& config() const { return config_; }

 private:
  class Session;

  void run_cot(Session& s) const;
  void run_direct_rag(Session& s) const;
  void run_raise_direct(Session& s) const;
  void run_decomposed(Session& s) const;

  EngineDeps deps_;
  EngineConfig config_;
};

}  // namespace raisekit::engine

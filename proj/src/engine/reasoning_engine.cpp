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

#include "raisekit/engine/reasoning_engine.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "raisekit/core/answer.hpp"
#include "raisekit/core/errors.hpp"
#include "raisekit/decompose/decomposer.hpp"
#include "raisekit/forge/query_forge.hpp"

namespace raisekit::engine {

using prompt::Stage;

std::optional<DecompositionPlan> PlanCache::find(const std::string& question_id) const {
  std::lock_guard lock(mu_);
  auto it = plans_.find(question_id);
  if (it == plans_.end()) return std::nullopt;
  return it->second;
}

void PlanCache::store(const std::string& question_id, const DecompositionPlan& plan) {
  std::lock_guard lock(mu_);
  plans_.emplace(question_id, plan);
}

// Per-question working state: the trace being built plus call accounting.
class ReasoningEngine::Session {
 public:
  Session(const ReasoningEngine& engine, const Question& q, const StrategySpec& spec)
      : engine_(engine), q(q), spec(spec) {
    trace.question_id = q.id;
    trace.dataset = q.dataset;
    trace.domain = q.domain;
    trace.gold_label = q.gold_label;
    trace.question_stem = q.stem;
    for (const auto& c : q.choices) trace.choice_texts.push_back(c.text);
    trace.strategy = spec;
    choices = prompt::render_choices(q);
  }

  std::string ask(Stage stage, const prompt::Bindings& bindings, std::string_view tag = {}) {
    return ask_raw(engine_.deps_.prompts->render(stage, bindings),
                   tag.empty() ? prompt::stage_id(stage) : tag, stage_name(stage));
  }

  std::string ask_raw(std::string prompt_text, std::string_view tag, std::string_view timing) {
    llm::CompletionRequest req;
    req.prompt = std::move(prompt_text);
    req.max_tokens = engine_.config_.max_tokens;
    req.temperature = engine_.config_.temperature;
    req.tag = std::string(tag);
    const auto start = std::chrono::steady_clock::now();
    ++trace.backend_calls;
    auto text = engine_.deps_.gateway->complete(req).text;
    add_time(timing, start);
    return text;
  }

  template <typename Fn>
  auto timed(std::string_view stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Guard {
      Session& s;
      std::string_view stage;
      std::chrono::steady_clock::time_point start;
      ~Guard() { s.add_time(stage, start); }
    } guard{*this, stage, start};
    return fn();
  }

  std::vector<ScoredPassage> retrieve(const std::string& query, std::vector<std::string>& flags) {
    ++trace.retrieval_calls;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto hits = retrieval::search(*engine_.deps_.index, query, *engine_.deps_.embedder,
                                    spec.k, spec.threshold);
      add_time("retrieve", start);
      return hits;
    } catch (const RetrievalError&) {
      add_time("retrieve", start);
      flags.emplace_back(kFlagRetrievalError);
      return {};
    }
  }

  void finish(std::string text) {
    trace.final_text = std::move(text);
    trace.final_label = extract_final_answer(trace.final_text, q.choices.size());
    if (!trace.final_label) trace.flags.emplace_back(kFlagUnparsed);
  }

  std::string documents(std::span<const ScoredPassage> docs) const {
    return prompt::render_documents(docs, engine_.config_.document_budget);
  }

  const ReasoningEngine& engine_;
  const Question& q;
  const StrategySpec& spec;
  std::string choices;
  ReasoningTrace trace;

 private:
  static std::string_view stage_name(Stage stage) {
    switch (stage) {
      case Stage::kDecompose: return "decompose";
      case Stage::kLogicalQuery:
      case Stage::kStepBackPrinciple:
      case Stage::kHydeGen: return "forge";
      case Stage::kSubanswer:
      case Stage::kStepBackSolve: return "subanswer";
      case Stage::kCompose: return "compose";
      case Stage::kCot: return "answer";
      case Stage::kJudge: return "judge";
    }
    return "other";
  }

  void add_time(std::string_view stage, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
    trace.timings_ms[std::string(stage)] += d.count();
  }
};

ReasoningEngine::ReasoningEngine(EngineDeps deps, EngineConfig config)
    : deps_(deps), config_(config) {
  if (!deps_.gateway) throw UsageError("engine needs a gateway");
  if (!deps_.prompts) throw UsageError("engine needs prompt templates");
  if (config_.workers < 1) throw UsageError("engine.workers must be >= 1");
}

ReasoningTrace ReasoningEngine::run(const Question& q, const StrategySpec& spec) const {
  spec.validate();
  if (uses_retrieval(spec.kind) && (!deps_.index || !deps_.embedder)) {
    throw UsageError("strategy " + std::string(to_string(spec.kind)) +
                     " needs a vector index and an embedder");
  }
  Session s(*this, q, spec);
  switch (spec.kind) {
    case StrategyKind::kCot:
      run_cot(s);
      break;
    case StrategyKind::kCotRag:
      run_direct_rag(s);
      break;
    case StrategyKind::kRaiseDirect:
      run_raise_direct(s);
      break;
    default:
      run_decomposed(s);
      break;
  }
  s.trace.validate();
  return std::move(s.trace);
}

void ReasoningEngine::run_cot(Session& s) const {
  s.finish(s.ask(Stage::kCot, {{"question", s.q.stem}, {"choices", s.choices}}));
}

void ReasoningEngine::run_direct_rag(Session& s) const {
  StepRecord rec;
  rec.index = 1;
  rec.subquestion = s.q.stem;
  rec.query = forge::forge_identity(1, forge::question_query_text(s.q), StrategyKind::kCotRag);
  rec.search_query = rec.query->text;
  rec.retrieved = s.retrieve(rec.query->text, rec.flags);

  const std::string base =
      deps_.prompts->render(Stage::kCot, {{"question", s.q.stem}, {"choices", s.choices}});
  s.finish(s.ask_raw(prompt::prepend_documents(s.documents(rec.retrieved), base), "cot_rag",
                     "answer"));
  s.trace.direct = std::move(rec);
}

void ReasoningEngine::run_raise_direct(Session& s) const {
  StepRecord rec;
  rec.index = 1;
  rec.subquestion = s.q.stem;
  rec.search_query = s.q.stem;
  auto forged = s.timed("forge", [&] {
    return forge::forge_direct(s.q, *deps_.gateway, *deps_.prompts,
                               {config_.max_tokens, config_.temperature});
  });
  s.trace.backend_calls += forged.calls;
  if (forged.fell_back) rec.flags.emplace_back(kFlagForgeFallback);
  rec.query = forged.query;
  rec.retrieved = s.retrieve(rec.query->text, rec.flags);

  rec.answer = SubAnswer{1, s.ask(Stage::kSubanswer, {{"documents", s.documents(rec.retrieved)},
                                                      {"question", s.q.stem},
                                                      {"choices", s.choices},
                                                      {"previous", ""},
                                                      {"step", "1"},
                                                      {"subquestion", rec.subquestion}})};
  const prompt::SolvedStep solved{1, rec.subquestion, rec.answer.text};
  s.finish(s.ask(Stage::kCompose,
                 {{"question", s.q.stem},
                  {"choices", s.choices},
                  {"steps", prompt::render_solved_steps(std::span(&solved, 1))}}));
  s.trace.direct = std::move(rec);
}

void ReasoningEngine::run_decomposed(Session& s) const {
  const StrategyKind kind = s.spec.kind;

  std::optional<DecompositionPlan> plan;
  if (deps_.plan_cache) plan = deps_.plan_cache->find(s.q.id);
  if (plan && plan->size() > static_cast<std::size_t>(s.spec.max_steps)) {
    plan->steps.resize(static_cast<std::size_t>(s.spec.max_steps));
  }
  if (!plan) {
    decompose::DecomposeOptions opts;
    opts.max_steps = static_cast<std::size_t>(s.spec.max_steps);
    opts.retries = config_.decompose_retries;
    opts.max_tokens = config_.max_tokens;
    opts.temperature = config_.temperature;
    try {
      auto result = s.timed(
          "decompose", [&] { return decompose::decompose(s.q, *deps_.gateway, *deps_.prompts, opts); });
      s.trace.backend_calls += result.calls;
      plan = std::move(result.plan);
      if (deps_.plan_cache) deps_.plan_cache->store(s.q.id, *plan);
    } catch (const DecompositionFailedError& e) {
      s.trace.backend_calls += config_.decompose_retries + 1;
      s.trace.flags.emplace_back(kFlagDecompositionFailed);
      if (config_.fallback_to_cot) {
        s.trace.flags.emplace_back(kFlagFallbackToCot);
        run_cot(s);
      } else {
        s.trace.final_text = e.raw_text();
        s.trace.flags.emplace_back(kFlagUnparsed);
      }
      return;
    }
  }
  s.trace.plan = plan;

  const forge::ForgeOptions forge_opts{config_.max_tokens, config_.temperature};
  std::vector<prompt::SolvedStep> solved;
  for (const auto& step : plan->steps) {
    StepRecord rec;
    rec.index = step.index;
    rec.subquestion = step.subquestion;
    rec.search_query = step.search_query;

    if (kind != StrategyKind::kLeastToMost) {
      auto forged = s.timed("forge", [&] {
        return forge::forge_for_step(kind, step, *deps_.gateway, *deps_.prompts, forge_opts);
      });
      s.trace.backend_calls += forged.calls;
      if (forged.fell_back) rec.flags.emplace_back(kFlagForgeFallback);
      rec.query = forged.query;
    }
    if (uses_retrieval(kind)) rec.retrieved = s.retrieve(rec.query->text, rec.flags);

    const std::string previous = prompt::render_solved_steps(solved);
    const std::string n = std::to_string(step.index);
    if (kind == StrategyKind::kStepBack) {
      std::string problem = s.q.stem;
      if (!previous.empty()) {
        problem += "\n\nPrevious subquestions and their solutions:\n" + previous;
      }
      problem += "\n\nCurrent subquestion to solve:\nSubquestion " + n + ": " + step.subquestion;
      rec.answer.text = s.ask(
          Stage::kStepBackSolve,
          {{"question", problem}, {"principles", rec.query->text}, {"choices", s.choices}});
    } else {
      rec.answer.text = s.ask(Stage::kSubanswer, {{"documents", s.documents(rec.retrieved)},
                                                  {"question", s.q.stem},
                                                  {"choices", s.choices},
                                                  {"previous", previous},
                                                  {"step", n},
                                                  {"subquestion", step.subquestion}});
    }
    rec.answer.step_index = step.index;
    solved.push_back({step.index, step.subquestion, rec.answer.text});
    s.trace.steps.push_back(std::move(rec));
  }

  s.finish(s.ask(Stage::kCompose, {{"question", s.q.stem},
                                   {"choices", s.choices},
                                   {"steps", prompt::render_solved_steps(solved)}}));
}

std::vector<ReasoningTrace> ReasoningEngine::run_all(std::span<const Question> questions,
                                                     const StrategySpec& spec) const {
  std::vector<ReasoningTrace> traces(questions.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < questions.size(); i = next++) {
      const Question& q = questions[i];
      try {
        traces[i] = run(q, spec);
      } catch (const std::exception& e) {
        ReasoningTrace t;
        t.question_id = q.id;
        t.dataset = q.dataset;
        t.domain = q.domain;
        t.gold_label = q.gold_label;
        t.question_stem = q.stem;
        for (const auto& c : q.choices) t.choice_texts.push_back(c.text);
        t.strategy = spec;
        t.flags.emplace_back(kFlagRunError);
        t.error = e.what();
        traces[i] = std::move(t);
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(questions.size(), static_cast<std::size_t>(config_.workers));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  return traces;
}

}  // namespace raisekit::engine

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

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "raisekit/llm/gateway.hpp"

namespace raisekit::llm {

// Replies with the script entries strictly in order. Running past the end
// raises ScriptExhaustedError; the script never wraps.
class ScriptedBackend : public CompletionBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> script);

  Completion complete(const CompletionRequest& req) override;
  std::string id() const override { return "scripted"; }

  std::size_t consumed() const;
  std::size_t remaining() const;
  // Every request received so far, in arrival order.
  std::vector<CompletionRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  std::vector<CompletionRequest> seen_;
};

// Computes each reply from the request. The responder may throw to inject
// failures (e.g. TransientBackendError).
class CallbackBackend : public CompletionBackend {
 public:
  using Responder = std::function<std::string(const CompletionRequest&)>;

  CallbackBackend(Responder responder, std::string id = "callback");

  Completion complete(const CompletionRequest& req) override;
  std::string id() const override { return id_; }
  std::uint64_t calls() const { return calls_.load(); }

 private:
  Responder responder_;
  std::string id_;
  std::atomic<std::uint64_t> calls_{0};
};

struct StagedMockOptions {
  std::uint64_t seed = 0;
  int min_steps = 1;
  int max_steps = 4;
};

// Deterministic stand-in for a reasoning model. Replies are a pure function
// of (seed, tag, prompt) and follow each stage's output format, so every
// strategy runs end to end offline:
//   p1_decompose    -> "Subquestion i: ... / Search Query for Subquestion i: ..."
//   p2_logical_query, stepback_principle, hyde_gen -> text + "End of generation"
//   p4_compose, cot, stepback_solve -> reasoning + "The final answer is (X)"
//   judge           -> "Helpfulness Rating: ... / Explanation: ..."
class StagedMockBackend : public CompletionBackend {
 public:
  explicit StagedMockBackend(StagedMockOptions options = {});

  Completion complete(const CompletionRequest& req) override;
  std::string id() const override;

  std::string respond(const CompletionRequest& req) const;

 private:
  StagedMockOptions options_;
};

}  // namespace raisekit::llm

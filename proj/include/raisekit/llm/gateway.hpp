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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raisekit::llm {

struct CompletionRequest {
  std::string prompt;
  int max_tokens = 1024;
  double temperature = 0.0;
  std::vector<std::string> stop;
  // Pipeline stage name; part of the replay key and used by staged mocks.
  std::string tag;

  void validate() const;
};

struct TokenCounts {
  int prompt = 0;
  int completion = 0;
};

struct Completion {
  std::string text;
  std::string backend_id;
  std::int64_t latency_ms = 0;
  std::optional<TokenCounts> token_counts;
};

// Anything that turns a prompt into text. Implementations throw
// TransientBackendError for retryable transport failures.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual Completion complete(const CompletionRequest& req) = 0;
  virtual std::string id() const = 0;
};

struct GatewayOptions {
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  int max_in_flight = 4;
};

struct BatchResult {
  std::optional<Completion> completion;
  std::exception_ptr error;
  std::string error_message;

  bool ok() const { return completion.has_value(); }
};

// Text before the earliest occurrence of any stop string.
std::string truncate_at_stop(std::string_view text, std::span<const std::string> stop);

// Retrying, in-flight-bounded front end over one backend. Safe for
// concurrent use; the in-flight bound is shared by every caller.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options = {});

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  Completion complete(const CompletionRequest& req);

  // Order-preserving; a failed item carries its error and leaves the others
  // untouched.
  std::vector<BatchResult> complete_batch(std::span<const CompletionRequest> reqs);

  std::uint64_t requests() const { return requests_.load(); }
  std::uint64_t attempts() const { return attempts_.load(); }
  std::string backend_id() const { return backend_->id(); }
  const GatewayOptions& options() const { return options_; }

 private:
  class Slot;

  Completion attempt_with_retries(const CompletionRequest& req);

  std::shared_ptr<CompletionBackend> backend_;
  GatewayOptions options_;

  std::mutex slot_mu_;
  std::condition_variable slot_cv_;
  int in_flight_ = 0;

  std::atomic<std::uint64_t> requests_{0};
  std::atomic<std::uint64_t> attempts_{0};
};

}  // namespace raisekit::llm

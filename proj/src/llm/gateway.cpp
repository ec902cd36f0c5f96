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

#include "raisekit/llm/gateway.hpp"

#include <algorithm>
#include <thread>

#include "raisekit/core/errors.hpp"

namespace raisekit::llm {

void CompletionRequest::validate() const {
  if (prompt.empty()) throw UsageError("completion request has an empty prompt");
  if (max_tokens < 1) throw UsageError("completion request max_tokens must be >= 1");
  if (temperature < 0.0) throw UsageError("completion request temperature must be >= 0");
}

std::string truncate_at_stop(std::string_view text, std::span<const std::string> stop) {
  std::size_t cut = text.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    cut = std::min(cut, text.find(s));
  }
  return std::string(text.substr(0, cut));
}

class Gateway::Slot {
 public:
  explicit Slot(Gateway& g) : g_(g) {
    std::unique_lock lock(g_.slot_mu_);
    g_.slot_cv_.wait(lock, [&] { return g_.in_flight_ < g_.options_.max_in_flight; });
    ++g_.in_flight_;
  }
  ~Slot() {
    {
      std::lock_guard lock(g_.slot_mu_);
      --g_.in_flight_;
    }
    g_.slot_cv_.notify_one();
  }
  Slot(const Slot&) = delete;
  Slot& operator=(const Slot&) = delete;

 private:
  Gateway& g_;
};

Gateway::Gateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)), options_(options) {
  if (!backend_) throw UsageError("gateway requires a backend");
  if (options_.max_in_flight < 1) throw UsageError("max_in_flight must be >= 1");
  if (options_.max_retries < 0) throw UsageError("max_retries must be >= 0");
}

Completion Gateway::complete(const CompletionRequest& req) {
  req.validate();
  ++requests_;
  Completion c;
  {
    Slot slot(*this);
    c = attempt_with_retries(req);
  }
  c.text = truncate_at_stop(c.text, req.stop);
  return c;
}

Completion Gateway::attempt_with_retries(const CompletionRequest& req) {
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0 && options_.backoff_base.count() > 0) {
      std::this_thread::sleep_for(options_.backoff_base * (1LL << (attempt - 1)));
    }
    ++attempts_;
    try {
      return backend_->complete(req);
    } catch (const TransientBackendError& e) {
      last_error = e.what();
    }
  }
  throw BackendUnavailableError("backend " + backend_->id() + " unavailable after " +
                                std::to_string(options_.max_retries + 1) +
                                " attempts: " + last_error);
}

std::vector<BatchResult> Gateway::complete_batch(std::span<const CompletionRequest> reqs) {
  std::vector<BatchResult> results(reqs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reqs.size(); i = next++) {
      try {
        results[i].completion = complete(reqs[i]);
      } catch (const std::exception& e) {
        results[i].error = std::current_exception();
        results[i].error_message = e.what();
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(reqs.size(), static_cast<std::size_t>(options_.max_in_flight));
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  pool.clear();
  return results;
}

}  // namespace raisekit::llm

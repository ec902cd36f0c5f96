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
#include <filesystem>
#include <memory>
#include <string>

#include "raisekit/llm/gateway.hpp"

namespace raisekit::llm {

enum class CacheMode {
  kRecord,  // serve hits from disk, forward misses to the inner backend and store them
  kReplay,  // serve from disk only; a miss is an error, the inner backend is never called
};

// Hex digest over (tag, SHA-256 of the prompt, max_tokens, temperature).
std::string cache_key(const CompletionRequest& req);

// Record/replay layer. One file per entry under `dir`, named <key>.txt: a
// single-line JSON metadata header followed by the raw completion text.
// Entries are written to a temporary file and renamed into place.
class CachedBackend : public CompletionBackend {
 public:
  CachedBackend(std::filesystem::path dir, CacheMode mode,
                std::shared_ptr<CompletionBackend> inner = nullptr);

  Completion complete(const CompletionRequest& req) override;
  std::string id() const override;

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }
  std::filesystem::path entry_path(const CompletionRequest& req) const;

 private:
  std::filesystem::path dir_;
  CacheMode mode_;
  std::shared_ptr<CompletionBackend> inner_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace raisekit::llm

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

#include <stdexcept>
#include <string>

namespace raisekit {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorCategory {
  kUsage,    // bad flags or configuration
  kData,     // malformed input files, parse failures, invariant breaks
  kBackend,  // LLM or embedding backend unreachable / exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define RAISEKIT_DEFINE_ERROR(Name, Category)                \
  class Name : public ::raisekit::Error {                    \
   public:                                                   \
    explicit Name(const std::string& what)                   \
        : ::raisekit::Error(ErrorCategory::Category, what) {} \
  }

RAISEKIT_DEFINE_ERROR(UsageError, kUsage);
RAISEKIT_DEFINE_ERROR(InvariantError, kData);
RAISEKIT_DEFINE_ERROR(PreprocessError, kData);
RAISEKIT_DEFINE_ERROR(ScoringError, kData);
RAISEKIT_DEFINE_ERROR(LoadError, kData);
RAISEKIT_DEFINE_ERROR(TemplateError, kData);
RAISEKIT_DEFINE_ERROR(PlanParseError, kData);
RAISEKIT_DEFINE_ERROR(ForgeError, kData);
RAISEKIT_DEFINE_ERROR(IndexBuildError, kData);
RAISEKIT_DEFINE_ERROR(IndexFormatError, kData);
RAISEKIT_DEFINE_ERROR(RetrievalError, kData);
RAISEKIT_DEFINE_ERROR(DegenerateEmbeddingError, kData);
RAISEKIT_DEFINE_ERROR(JudgeParseError, kData);
RAISEKIT_DEFINE_ERROR(BackendError, kBackend);
RAISEKIT_DEFINE_ERROR(BackendUnavailableError, kBackend);
RAISEKIT_DEFINE_ERROR(ScriptExhaustedError, kBackend);
RAISEKIT_DEFINE_ERROR(CacheMissError, kBackend);

#undef RAISEKIT_DEFINE_ERROR

// Raised by a backend for failures worth retrying (connection reset, 429, 5xx).
class TransientBackendError : public BackendError {
 public:
  using BackendError::BackendError;
};

// All decomposition attempts were unparseable; carries the last raw output.
class DecompositionFailedError : public Error {
 public:
  DecompositionFailedError(const std::string& what, std::string raw_text)
      : Error(ErrorCategory::kData, what), raw_text_(std::move(raw_text)) {}

  const std::string& raw_text() const noexcept { return raw_text_; }

 private:
  std::string raw_text_;
};

}  // namespace raisekit

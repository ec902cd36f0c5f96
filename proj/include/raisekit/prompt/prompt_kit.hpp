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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raisekit/core/types.hpp"

namespace raisekit::prompt {

enum class Stage {
  kDecompose,        // p1_decompose
  kLogicalQuery,     // p2_logical_query
  kSubanswer,        // p3_subanswer
  kCompose,          // p4_compose
  kCot,              // cot
  kStepBackPrinciple,
  kStepBackSolve,
  kHydeGen,
  kJudge,
};

inline constexpr std::array<Stage, 9> kAllStages = {
    Stage::kDecompose,         Stage::kLogicalQuery,  Stage::kSubanswer,
    Stage::kCompose,           Stage::kCot,           Stage::kStepBackPrinciple,
    Stage::kStepBackSolve,     Stage::kHydeGen,       Stage::kJudge};

// Asset/tag name, e.g. "p1_decompose".
std::string_view stage_id(Stage stage);
std::optional<Stage> parse_stage(std::string_view id);

using Bindings = std::map<std::string, std::string, std::less<>>;

// A template body with {{name}} placeholders.
class PromptTemplate {
 public:
  PromptTemplate(Stage stage, std::string body);

  Stage stage() const { return stage_; }
  const std::string& body() const { return body_; }
  // Distinct placeholder names in first-appearance order.
  const std::vector<std::string>& placeholders() const { return names_; }

  // Single-pass substitution: bound values are inserted verbatim and never
  // rescanned. Throws TemplateError naming the first unbound placeholder.
  std::string render(const Bindings& bindings) const;

 private:
  struct Piece {
    bool is_slot;
    std::string text;  // literal text or placeholder name
  };

  Stage stage_;
  std::string body_;
  std::vector<Piece> pieces_;
  std::vector<std::string> names_;
};

// The full set of stage templates, loaded from one file per stage
// (<dir>/<stage_id>.txt).
class PromptKit {
 public:
  static PromptKit load(const std::filesystem::path& dir);
  static PromptKit load_default();
  static std::filesystem::path default_dir();

  const PromptTemplate& get(Stage stage) const;
  std::string render(Stage stage, const Bindings& bindings) const {
    return get(stage).render(bindings);
  }

 private:
  explicit PromptKit(std::vector<PromptTemplate> templates);
  std::vector<PromptTemplate> templates_;
};

inline constexpr std::string_view kNoDocuments = "No documents retrieved.";
inline constexpr std::size_t kDefaultDocumentBudget = 6000;

// "(A) text" lines, one per choice.
std::string render_choices(const Question& q);

// "Title — text" per passage in order, blank line between passages, cut to
// `char_budget` bytes (0 = unlimited) on a UTF-8 boundary. An empty list, or
// one with nothing fitting, renders as kNoDocuments.
std::string render_documents(std::span<const ScoredPassage> passages,
                             std::size_t char_budget = kDefaultDocumentBudget);

struct SolvedStep {
  int index = 0;
  std::string subquestion;
  std::string solution;
};

// "Subquestion j: ..." / "Subquestion j Solution: ..." blocks in the given
// order, separated by blank lines. Empty input renders as "".
std::string render_solved_steps(std::span<const SolvedStep> steps);

// A prompt preceded by a "Documents:" block, used for single-shot RAG.
std::string prepend_documents(std::string_view documents_block, std::string_view prompt);

}  // namespace raisekit::prompt

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

#include "raisekit/prompt/prompt_kit.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "raisekit/core/errors.hpp"

namespace raisekit::prompt {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 9> kStageIds = {{
    {Stage::kDecompose, "p1_decompose"},
    {Stage::kLogicalQuery, "p2_logical_query"},
    {Stage::kSubanswer, "p3_subanswer"},
    {Stage::kCompose, "p4_compose"},
    {Stage::kCot, "cot"},
    {Stage::kStepBackPrinciple, "stepback_principle"},
    {Stage::kStepBackSolve, "stepback_solve"},
    {Stage::kHydeGen, "hyde_gen"},
    {Stage::kJudge, "judge"},
}};

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::string_view stage_id(Stage stage) {
  for (const auto& [s, id] : kStageIds) {
    if (s == stage) return id;
  }
  throw TemplateError("unknown prompt stage");
}

std::optional<Stage> parse_stage(std::string_view id) {
  for (const auto& [s, name] : kStageIds) {
    if (name == id) return s;
  }
  return std::nullopt;
}

PromptTemplate::PromptTemplate(Stage stage, std::string body)
    : stage_(stage), body_(std::move(body)) {
  std::size_t pos = 0;
  std::string literal;
  while (pos < body_.size()) {
    const std::size_t open = body_.find("{{", pos);
    if (open == std::string::npos) {
      literal += body_.substr(pos);
      break;
    }
    const std::size_t close = body_.find("}}", open + 2);
    const std::string name =
        close == std::string::npos ? std::string() : body_.substr(open + 2, close - open - 2);
    const bool valid = !name.empty() && std::all_of(name.begin(), name.end(), is_name_char);
    if (!valid) {
      // Not a placeholder; keep the braces as literal text.
      literal += body_.substr(pos, open + 2 - pos);
      pos = open + 2;
      continue;
    }
    literal += body_.substr(pos, open - pos);
    if (!literal.empty()) pieces_.push_back({false, std::move(literal)});
    literal.clear();
    pieces_.push_back({true, name});
    if (std::find(names_.begin(), names_.end(), name) == names_.end()) names_.push_back(name);
    pos = close + 2;
  }
  if (!literal.empty()) pieces_.push_back({false, std::move(literal)});
}

std::string PromptTemplate::render(const Bindings& bindings) const {
  for (const auto& name : names_) {
    if (bindings.find(name) == bindings.end()) {
      throw TemplateError("template " + std::string(stage_id(stage_)) +
                          " has no binding for placeholder '" + name + "'");
    }
  }
  std::string out;
  for (const auto& p : pieces_) {
    out += p.is_slot ? bindings.find(p.text)->second : p.text;
  }
  return out;
}

PromptKit::PromptKit(std::vector<PromptTemplate> templates)
    : templates_(std::move(templates)) {}

PromptKit PromptKit::load(const std::filesystem::path& dir) {
  std::vector<PromptTemplate> templates;
  for (Stage stage : kAllStages) {
    const auto path = dir / (std::string(stage_id(stage)) + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TemplateError("missing prompt template " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    std::string text = body.str();
    // Files end with a newline; prompts end at the final line.
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    templates.emplace_back(stage, std::move(text));
  }
  return PromptKit(std::move(templates));
}

std::filesystem::path PromptKit::default_dir() {
  if (const char* env = std::getenv("RAISE_PROMPT_DIR"); env && *env) return env;
  return RAISEKIT_DEFAULT_PROMPT_DIR;
}

PromptKit PromptKit::load_default() { return load(default_dir()); }

const PromptTemplate& PromptKit::get(Stage stage) const {
  for (const auto& t : templates_) {
    if (t.stage() == stage) return t;
  }
  throw TemplateError("prompt kit lacks stage " + std::string(stage_id(stage)));
}

std::string render_choices(const Question& q) {
  std::string out;
  for (std::size_t i = 0; i < q.choices.size(); ++i) {
    if (i) out += '\n';
    out += '(';
    out += q.choices[i].label.letter();
    out += ") ";
    out += q.choices[i].text;
  }
  return out;
}

namespace {

// Largest prefix length <= limit that does not split a UTF-8 sequence.
std::size_t utf8_floor(std::string_view s, std::size_t limit) {
  if (limit >= s.size()) return s.size();
  while (limit > 0 && (static_cast<unsigned char>(s[limit]) & 0xC0) == 0x80) --limit;
  return limit;
}

}  // namespace

std::string render_documents(std::span<const ScoredPassage> passages,
                             std::size_t char_budget) {
  std::string out;
  for (const auto& p : passages) {
    std::string entry = p.passage.title + " — " + p.passage.text;
    const std::size_t sep = out.empty() ? 0 : 2;
    if (char_budget != 0 && out.size() + sep + entry.size() > char_budget) {
      if (out.empty()) out = entry.substr(0, utf8_floor(entry, char_budget));
      break;
    }
    if (sep) out += "\n\n";
    out += entry;
  }
  return out.empty() ? std::string(kNoDocuments) : out;
}

std::string render_solved_steps(std::span<const SolvedStep> steps) {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += "\n\n";
    const std::string n = std::to_string(s.index);
    out += "Subquestion " + n + ": " + s.subquestion + "\n";
    out += "Subquestion " + n + " Solution: " + s.solution;
  }
  return out;
}

std::string prepend_documents(std::string_view documents_block, std::string_view prompt) {
  std::string out = "Documents:\n";
  out += documents_block;
  out += "\n\n";
  out += prompt;
  return out;
}

}  // namespace raisekit::prompt

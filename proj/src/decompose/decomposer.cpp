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

#include "raisekit/decompose/decomposer.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "raisekit/core/errors.hpp"

namespace raisekit::decompose {

namespace {

struct Header {
  bool is_query = false;
  int index = 0;
  std::string content;
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool consume_ci(std::string_view& s, std::string_view word) {
  if (s.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
  }
  s.remove_prefix(word.size());
  return true;
}

void skip_spaces(std::string_view& s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

bool consume_bold(std::string_view& s) {
  if (s.starts_with("**") || s.starts_with("__")) {
    s.remove_prefix(2);
    return true;
  }
  return false;
}

void strip_list_marker(std::string_view& s) {
  while (!s.empty() && s.front() == '#') s.remove_prefix(1);
  skip_spaces(s);
  if (s.size() >= 2 && (s[0] == '-' || s[0] == '*' || s[0] == '+') &&
      (s[1] == ' ' || s[1] == '\t')) {
    s.remove_prefix(2);
  } else if (s.starts_with("•")) {
    s.remove_prefix(std::string_view("•").size());
  } else {
    std::size_t digits = 0;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits > 0 && digits + 1 < s.size() && (s[digits] == '.' || s[digits] == ')') &&
        (s[digits + 1] == ' ' || s[digits + 1] == '\t')) {
      s.remove_prefix(digits + 2);
    }
  }
  skip_spaces(s);
}

std::optional<Header> match_header(std::string_view line) {
  std::string_view s = trim(line);
  strip_list_marker(s);
  const bool bold = consume_bold(s);
  skip_spaces(s);

  Header h;
  if (consume_ci(s, "search")) {
    skip_spaces(s);
    if (!consume_ci(s, "query")) return std::nullopt;
    skip_spaces(s);
    if (!consume_ci(s, "for")) return std::nullopt;
    skip_spaces(s);
    h.is_query = true;
  }
  if (!consume_ci(s, "subquestion")) return std::nullopt;
  skip_spaces(s);
  std::size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits == 0 || digits > 6) return std::nullopt;
  h.index = std::stoi(std::string(s.substr(0, digits)));
  s.remove_prefix(digits);
  skip_spaces(s);
  consume_bold(s);
  skip_spaces(s);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  skip_spaces(s);
  consume_bold(s);
  s = trim(s);
  if (bold && (s.ends_with("**") || s.ends_with("__"))) {
    s.remove_suffix(2);
    s = trim(s);
  }
  h.content = std::string(s);
  return h;
}

void append_line(std::string& target, std::string_view line) {
  if (line.empty()) return;
  if (!target.empty()) target += '\n';
  target += line;
}

}  // namespace

DecompositionPlan parse_plan(std::string_view raw, std::size_t max_steps) {
  std::map<int, std::string> subquestions;
  std::map<int, std::string> queries;
  enum class Mode { kNone, kSub, kQuery } mode = Mode::kNone;
  std::string* target = nullptr;

  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    const std::string_view line = raw.substr(pos, end - pos);
    pos = end + 1;

    if (auto h = match_header(line)) {
      auto& bucket = h->is_query ? queries : subquestions;
      auto [it, inserted] = bucket.try_emplace(h->index, std::string());
      if (inserted) {
        mode = h->is_query ? Mode::kQuery : Mode::kSub;
        target = &it->second;
        append_line(*target, h->content);
      } else {
        mode = Mode::kNone;
        target = nullptr;
      }
      continue;
    }
    const std::string_view text = trim(line);
    if (mode == Mode::kQuery && text.empty()) {
      mode = Mode::kNone;
      target = nullptr;
      continue;
    }
    if (target) append_line(*target, text);
  }

  DecompositionPlan plan;
  for (const auto& [index, sub] : subquestions) {
    auto q = queries.find(index);
    if (sub.empty() || q == queries.end() || q->second.empty()) continue;
    if (plan.steps.size() >= max_steps) break;
    plan.steps.push_back(
        PlanStep{static_cast<int>(plan.steps.size() + 1), sub, q->second});
  }
  if (plan.steps.empty()) {
    throw PlanParseError("no complete subquestion/search-query pair found");
  }
  return plan;
}

std::string format_plan(const DecompositionPlan& plan) {
  std::string out;
  for (const auto& s : plan.steps) {
    const std::string n = std::to_string(s.index);
    out += "Subquestion " + n + ": " + s.subquestion + "\n";
    out += "Search Query for Subquestion " + n + ": " + s.search_query + "\n";
  }
  return out;
}

DecomposeResult decompose(const Question& q, llm::Gateway& gateway,
                          const prompt::PromptKit& kit, const DecomposeOptions& options) {
  const std::string base = kit.render(
      prompt::Stage::kDecompose,
      {{"question", q.stem}, {"choices", prompt::render_choices(q)}});

  DecomposeResult result;
  std::string last_error;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    llm::CompletionRequest req;
    req.prompt = attempt == 0 ? base : base + "\n\n" + std::string(kFormatReminder);
    req.max_tokens = options.max_tokens;
    req.temperature = options.temperature;
    req.tag = std::string(prompt::stage_id(prompt::Stage::kDecompose));
    result.raw_text = gateway.complete(req).text;
    ++result.calls;
    try {
      result.plan = parse_plan(result.raw_text, options.max_steps);
      return result;
    } catch (const PlanParseError& e) {
      last_error = e.what();
    }
  }
  throw DecompositionFailedError("question " + q.id + ": decomposition unparseable after " +
                                     std::to_string(result.calls) + " attempts (" +
                                     last_error + ")",
                                 result.raw_text);
}

}  // namespace raisekit::decompose

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

#include "raisekit/llm/mock_backends.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/rng.hpp"

namespace raisekit::llm {

ScriptedBackend::ScriptedBackend(std::vector<std::string> script)
    : script_(std::move(script)) {}

Completion ScriptedBackend::complete(const CompletionRequest& req) {
  std::lock_guard lock(mu_);
  seen_.push_back(req);
  if (next_ >= script_.size()) {
    throw ScriptExhaustedError("scripted backend exhausted after " +
                               std::to_string(script_.size()) + " replies (tag '" +
                               req.tag + "')");
  }
  return Completion{script_[next_++], id(), 0, std::nullopt};
}

std::size_t ScriptedBackend::consumed() const {
  std::lock_guard lock(mu_);
  return next_;
}

std::size_t ScriptedBackend::remaining() const {
  std::lock_guard lock(mu_);
  return script_.size() - next_;
}

std::vector<CompletionRequest> ScriptedBackend::requests() const {
  std::lock_guard lock(mu_);
  return seen_;
}

CallbackBackend::CallbackBackend(Responder responder, std::string id)
    : responder_(std::move(responder)), id_(std::move(id)) {}

Completion CallbackBackend::complete(const CompletionRequest& req) {
  ++calls_;
  return Completion{responder_(req), id_, 0, std::nullopt};
}

StagedMockBackend::StagedMockBackend(StagedMockOptions options) : options_(options) {
  if (options_.min_steps < 1 || options_.max_steps < options_.min_steps) {
    throw UsageError("staged mock step range is empty");
  }
}

std::string StagedMockBackend::id() const {
  return "staged-mock:" + std::to_string(options_.seed);
}

Completion StagedMockBackend::complete(const CompletionRequest& req) {
  return Completion{respond(req), id(), 0, std::nullopt};
}

namespace {

// Value following the last line that starts with `key`, or empty.
std::string last_field(const std::string& prompt, std::string_view key) {
  std::istringstream in(prompt);
  std::string line, found;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) found = line.substr(key.size());
  }
  auto b = found.find_first_not_of(' ');
  return b == std::string::npos ? std::string() : found.substr(b);
}

std::size_t count_choice_lines(const std::string& prompt) {
  std::size_t n = 0;
  for (char c = 'A'; c <= 'J'; ++c) {
    const std::string marker = std::string("\n(") + c + ") ";
    if (prompt.find(marker) == std::string::npos) break;
    ++n;
  }
  return n == 0 ? 4 : n;
}

std::string hex8(std::uint64_t h) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s(8, '0');
  for (int i = 7; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return s;
}

constexpr std::array<std::string_view, 4> kRatings = {
    "No relevance at all", "Superficially relevant", "Partially relevant",
    "Fully relevant"};

}  // namespace

std::string StagedMockBackend::respond(const CompletionRequest& req) const {
  SplitMix64 rng(derive_seed(options_.seed, req.tag + '\n' + req.prompt));
  const std::string tag8 = hex8(rng.next());
  std::ostringstream out;

  if (req.tag == "p1_decompose") {
    const auto span = static_cast<std::uint64_t>(options_.max_steps - options_.min_steps + 1);
    const int n = options_.min_steps + static_cast<int>(rng.below(span));
    for (int i = 1; i <= n; ++i) {
      out << "Subquestion " << i << ": Which principle governs part " << i
          << " of problem " << tag8 << "?\n"
          << "Search Query for Subquestion " << i << ": principle part " << i
          << " problem " << tag8 << "\n";
    }
    return out.str();
  }
  if (req.tag == "p2_logical_query") {
    std::string query = last_field(req.prompt, "Search Query:");
    if (query.empty()) query = "problem " + tag8;
    out << "The relevant explanation concerns " << query
        << ". It states the governing relation in general terms. End of generation";
    return out.str();
  }
  if (req.tag == "stepback_principle") {
    out << "The principle behind " << tag8
        << " is conservation of the relevant quantity. End of generation";
    return out.str();
  }
  if (req.tag == "hyde_gen") {
    out << "A hypothetical answer paragraph for " << tag8
        << " describing the mechanism involved. End of generation";
    return out.str();
  }
  if (req.tag == "p3_subanswer") {
    out << "Solution " << tag8 << ": applying the principle gives the intermediate result.";
    return out.str();
  }
  if (req.tag == "judge") {
    out << "Helpfulness Rating: " << kRatings[rng.below(kRatings.size())] << "\n"
        << "Explanation: mock judgement " << tag8 << ".";
    return out.str();
  }
  // cot, cot_rag, stepback_solve, p4_compose and anything unrecognised.
  const auto labels = count_choice_lines(req.prompt);
  const char letter = static_cast<char>('A' + rng.below(labels));
  out << "Reasoning " << tag8 << " step by step. The final answer is (" << letter << ").";
  return out.str();
}

}  // namespace raisekit::llm

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

#include "raisekit/llm/http_backend.hpp"

#include <chrono>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "raisekit/core/errors.hpp"

namespace raisekit::llm {

using nlohmann::json;

HttpChatBackend::HttpChatBackend(HttpChatOptions options)
    : options_(std::move(options)),
      transport_(parse_endpoint(options_.url), options_.timeout) {
  if (options_.model.empty()) throw UsageError("chat backend needs a model name");
}

Completion HttpChatBackend::complete(const CompletionRequest& req) {
  json body{{"model", options_.model},
            {"messages", json::array({json{{"role", "user"}, {"content", req.prompt}}})},
            {"temperature", req.temperature},
            {"max_tokens", req.max_tokens}};
  if (!req.stop.empty()) body["stop"] = req.stop;

  std::vector<std::pair<std::string, std::string>> headers;
  if (!options_.api_key.empty()) {
    headers.emplace_back("Authorization", "Bearer " + options_.api_key);
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string raw = transport_.post_json(body.dump(), headers);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  json reply;
  try {
    reply = json::parse(raw);
  } catch (const json::parse_error&) {
    throw BackendError("chat backend returned non-JSON body");
  }
  Completion c;
  c.backend_id = id();
  c.latency_ms = elapsed.count();
  try {
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    c.text = content.is_null() ? std::string() : content.get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(std::string("chat backend reply lacks choices[0].message.content: ") +
                       e.what());
  }
  if (auto usage = reply.find("usage"); usage != reply.end() && usage->is_object()) {
    c.token_counts = TokenCounts{usage->value("prompt_tokens", 0),
                                 usage->value("completion_tokens", 0)};
  }
  return c;
}

std::string api_key_from_environment() {
  const char* key = std::getenv("RAISE_API_KEY");
  return key ? std::string(key) : std::string();
}

}  // namespace raisekit::llm

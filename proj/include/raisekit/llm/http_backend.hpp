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

#include <chrono>
#include <memory>
#include <string>

#include "raisekit/llm/gateway.hpp"
#include "raisekit/llm/http_transport.hpp"

namespace raisekit::llm {

struct HttpChatOptions {
  std::string url;    // full chat-completions URL
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};
};

// Chat-completions client: POST {model, messages:[{role:"user", content}],
// temperature, max_tokens, stop} and read choices[0].message.content.
class HttpChatBackend : public CompletionBackend {
 public:
  explicit HttpChatBackend(HttpChatOptions options);

  Completion complete(const CompletionRequest& req) override;
  std::string id() const override { return "http:" + options_.model; }

  std::uint64_t transport_calls() const { return transport_.invocations(); }

 private:
  HttpChatOptions options_;
  HttpTransport transport_;
};

// Reads the bearer token from RAISE_API_KEY; empty when unset.
std::string api_key_from_environment();

}  // namespace raisekit::llm

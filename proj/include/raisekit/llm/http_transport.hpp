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
#include <string>
#include <utility>
#include <vector>

namespace raisekit::llm {

struct HttpEndpoint {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;
};

// Throws UsageError for anything other than http(s)://host[:port][/path].
HttpEndpoint parse_endpoint(const std::string& url);

// Minimal JSON-over-HTTP POST. Connection failures, 429 and 5xx raise
// TransientBackendError; other non-2xx statuses raise BackendError.
class HttpTransport {
 public:
  HttpTransport(HttpEndpoint endpoint, std::chrono::seconds timeout);

  std::string post_json(const std::string& body,
                        const std::vector<std::pair<std::string, std::string>>& headers);

  std::uint64_t invocations() const { return invocations_.load(); }
  const HttpEndpoint& endpoint() const { return endpoint_; }

 private:
  HttpEndpoint endpoint_;
  std::chrono::seconds timeout_;
  std::atomic<std::uint64_t> invocations_{0};
};

}  // namespace raisekit::llm

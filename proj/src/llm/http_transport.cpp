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

#include "raisekit/llm/http_transport.hpp"

#include <httplib.h>

#include <regex>

#include "raisekit/core/errors.hpp"

namespace raisekit::llm {

HttpEndpoint parse_endpoint(const std::string& url) {
  static const std::regex kUrl(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) {
    throw UsageError("unsupported endpoint URL '" + url + "'");
  }
  HttpEndpoint ep;
  ep.scheme = m[1];
  ep.host = m[2];
  ep.port = m[3].matched ? std::stoi(m[3]) : (ep.scheme == "https" ? 443 : 80);
  ep.path = m[4].matched ? std::string(m[4]) : "/";
  return ep;
}

HttpTransport::HttpTransport(HttpEndpoint endpoint, std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (endpoint_.scheme == "https") {
    throw UsageError("https endpoints need a build with OpenSSL-enabled httplib");
  }
#endif
}

std::string HttpTransport::post_json(
    const std::string& body,
    const std::vector<std::pair<std::string, std::string>>& headers) {
  ++invocations_;
  const std::string base = endpoint_.scheme + "://" + endpoint_.host + ":" +
                           std::to_string(endpoint_.port);
  httplib::Client client(base);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  httplib::Headers hdrs;
  for (const auto& [k, v] : headers) hdrs.emplace(k, v);

  auto res = client.Post(endpoint_.path, hdrs, body, "application/json");
  if (!res) {
    throw TransientBackendError("POST " + base + endpoint_.path + " failed: " +
                                httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientBackendError("POST " + base + endpoint_.path + " returned HTTP " +
                                std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw BackendError("POST " + base + endpoint_.path + " returned HTTP " +
                       std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  return res->body;
}

}  // namespace raisekit::llm

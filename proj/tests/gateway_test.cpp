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

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "raisekit/core/errors.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/llm/mock_backends.hpp"

namespace raisekit::llm {
namespace {

CompletionRequest request(std::string prompt, std::string tag = "test") {
  CompletionRequest r;
  r.prompt = std::move(prompt);
  r.tag = std::move(tag);
  return r;
}

GatewayOptions fast(int retries = 3, int in_flight = 4) {
  GatewayOptions o;
  o.max_retries = retries;
  o.backoff_base = std::chrono::milliseconds(0);
  o.max_in_flight = in_flight;
  return o;
}

TEST(GatewayTest, ScriptedEcho) {
  Gateway gw(std::make_shared<ScriptedBackend>(std::vector<std::string>{"X"}), fast());
  EXPECT_EQ(gw.complete(request("anything")).text, "X");
}

TEST(GatewayTest, ScriptOverConsumptionRaises) {
  auto script = std::make_shared<ScriptedBackend>(std::vector<std::string>{"a", "b"});
  Gateway gw(script, fast());
  EXPECT_EQ(gw.complete(request("1")).text, "a");
  EXPECT_EQ(gw.complete(request("2")).text, "b");
  EXPECT_THROW(gw.complete(request("3")), ScriptExhaustedError);
  EXPECT_EQ(script->consumed(), 2u);
  EXPECT_EQ(script->requests().size(), 3u);
}

TEST(GatewayTest, StopStringTruncates) {
  Gateway gw(std::make_shared<ScriptedBackend>(
                 std::vector<std::string>{"abc End of generation xyz"}),
             fast());
  auto req = request("p");
  req.stop = {"End of generation"};
  EXPECT_EQ(gw.complete(req).text, "abc ");
}

TEST(GatewayTest, TruncateAtEarliestStop) {
  const std::vector<std::string> stops{"ZZ", "Y"};
  EXPECT_EQ(truncate_at_stop("aaYbbZZ", stops), "aa");
  EXPECT_EQ(truncate_at_stop("plain", stops), "plain");
}

TEST(GatewayTest, RejectsInvalidRequests) {
  Gateway gw(std::make_shared<ScriptedBackend>(std::vector<std::string>{"x"}), fast());
  EXPECT_THROW(gw.complete(request("")), UsageError);
  auto r = request("p");
  r.max_tokens = 0;
  EXPECT_THROW(gw.complete(r), UsageError);
}

TEST(GatewayTest, RetriesTransientFailures) {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<CallbackBackend>([&](const CompletionRequest&) -> std::string {
    if (++calls < 3) throw TransientBackendError("503");
    return "ok";
  });
  Gateway gw(backend, fast(3));
  EXPECT_EQ(gw.complete(request("p")).text, "ok");
  EXPECT_EQ(calls.load(), 3);
  EXPECT_EQ(gw.attempts(), 3u);
}

TEST(GatewayTest, ExhaustedRetriesMeanUnavailable) {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<CallbackBackend>([&](const CompletionRequest&) -> std::string {
    ++calls;
    throw TransientBackendError("connection reset");
  });
  Gateway gw(backend, fast(3));
  EXPECT_THROW(gw.complete(request("p")), BackendUnavailableError);
  EXPECT_EQ(calls.load(), 4);  // first attempt + 3 retries
}

TEST(GatewayTest, PermanentErrorsAreNotRetried) {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<CallbackBackend>([&](const CompletionRequest&) -> std::string {
    ++calls;
    throw BackendError("400");
  });
  Gateway gw(backend, fast(3));
  EXPECT_THROW(gw.complete(request("p")), BackendError);
  EXPECT_EQ(calls.load(), 1);
}

TEST(GatewayTest, BackoffGrowsExponentially) {
  std::atomic<int> calls{0};
  auto backend = std::make_shared<CallbackBackend>([&](const CompletionRequest&) -> std::string {
    if (++calls < 3) throw TransientBackendError("503");
    return "ok";
  });
  GatewayOptions o = fast(3);
  o.backoff_base = std::chrono::milliseconds(20);
  Gateway gw(backend, o);
  const auto start = std::chrono::steady_clock::now();
  gw.complete(request("p"));
  // 20 ms + 40 ms of backoff before the third attempt.
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(60));
}

TEST(GatewayTest, BatchPreservesOrder) {
  auto backend = std::make_shared<CallbackBackend>([](const CompletionRequest& r) {
    // Later items finish first.
    std::this_thread::sleep_for(std::chrono::milliseconds(8 - std::stoi(r.prompt)));
    return "reply " + r.prompt;
  });
  Gateway gw(backend, fast(0, 2));
  std::vector<CompletionRequest> reqs;
  for (int i = 0; i < 8; ++i) reqs.push_back(request(std::to_string(i)));
  const auto results = gw.complete_batch(reqs);
  ASSERT_EQ(results.size(), 8u);
  for (int i = 0; i < 8; ++i) {
    ASSERT_TRUE(results[i].ok());
    EXPECT_EQ(results[i].completion->text, "reply " + std::to_string(i));
  }
}

TEST(GatewayTest, BatchIsolatesFailures) {
  auto backend = std::make_shared<CallbackBackend>([](const CompletionRequest& r) -> std::string {
    if (r.prompt == "3") throw BackendError("induced");
    return r.prompt;
  });
  Gateway gw(backend, fast(0, 2));
  std::vector<CompletionRequest> reqs;
  for (int i = 1; i <= 5; ++i) reqs.push_back(request(std::to_string(i)));
  const auto results = gw.complete_batch(reqs);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(results[i].ok(), i != 2) << i;
  EXPECT_TRUE(results[2].error);
  EXPECT_NE(results[2].error_message.find("induced"), std::string::npos);
}

TEST(GatewayTest, InFlightBoundHolds) {
  std::atomic<int> current{0}, peak{0};
  auto backend = std::make_shared<CallbackBackend>([&](const CompletionRequest&) {
    const int now = ++current;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --current;
    return std::string("x");
  });
  Gateway gw(backend, fast(0, 3));
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) gw.complete(request("p"));
    });
  }
  threads.clear();
  EXPECT_LE(peak.load(), 3);
  EXPECT_EQ(gw.requests(), 40u);
}

TEST(StagedMockTest, DeterministicPerPrompt) {
  StagedMockBackend a({.seed = 5}), b({.seed = 5}), c({.seed = 6});
  auto req = request("Question text\n(A) x\n(B) y\n(C) z\n(D) w", "cot");
  EXPECT_EQ(a.respond(req), b.respond(req));
  EXPECT_NE(a.respond(req), c.respond(req));
  EXPECT_NE(a.respond(req).find("The final answer is ("), std::string::npos);
}

}  // namespace
}  // namespace raisekit::llm

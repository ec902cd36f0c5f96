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

#include "raisekit/core/errors.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/llm/mock_backends.hpp"
#include "raisekit/llm/replay_cache.hpp"
#include "support/test_support.hpp"

namespace raisekit::llm {
namespace {

using testing::TempDir;

CompletionRequest request(std::string prompt, std::string tag, int max_tokens = 64,
                          double temperature = 0.0) {
  CompletionRequest r;
  r.prompt = std::move(prompt);
  r.tag = std::move(tag);
  r.max_tokens = max_tokens;
  r.temperature = temperature;
  return r;
}

TEST(CacheKeyTest, DistinguishesEveryKeyField) {
  const auto base = cache_key(request("p", "t"));
  EXPECT_EQ(base, cache_key(request("p", "t")));
  EXPECT_NE(base, cache_key(request("p2", "t")));
  EXPECT_NE(base, cache_key(request("p", "t2")));
  EXPECT_NE(base, cache_key(request("p", "t", 65)));
  EXPECT_NE(base, cache_key(request("p", "t", 64, 0.5)));
  EXPECT_EQ(base.size(), 64u);
}

TEST(ReplayCacheTest, RecordThenReplayWithoutBackend) {
  TempDir dir;
  auto inner = std::make_shared<CallbackBackend>(
      [](const CompletionRequest& r) { return "reply to " + r.prompt; });
  std::vector<std::string> recorded;
  {
    CachedBackend rec(dir.path(), CacheMode::kRecord, inner);
    for (int i = 0; i < 5; ++i) {
      recorded.push_back(rec.complete(request("prompt " + std::to_string(i), "cot")).text);
    }
    // Second pass in record mode is served from disk.
    rec.complete(request("prompt 0", "cot"));
    EXPECT_EQ(rec.hits(), 1u);
  }
  EXPECT_EQ(inner->calls(), 5u);

  CachedBackend replay(dir.path(), CacheMode::kReplay, nullptr);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(replay.complete(request("prompt " + std::to_string(i), "cot")).text, recorded[i]);
  }
  EXPECT_EQ(inner->calls(), 5u);
  EXPECT_THROW(replay.complete(request("never seen", "cot")), CacheMissError);
  EXPECT_EQ(replay.misses(), 1u);
}

TEST(ReplayCacheTest, EntryHoldsHeaderAndRawText) {
  TempDir dir;
  auto inner = std::make_shared<ScriptedBackend>(std::vector<std::string>{"line one\nline two"});
  CachedBackend rec(dir.path(), CacheMode::kRecord, inner);
  const auto req = request("p", "judge");
  rec.complete(req);
  const std::string content = testing::read_file(rec.entry_path(req));
  const auto newline = content.find('\n');
  ASSERT_NE(newline, std::string::npos);
  EXPECT_NE(content.substr(0, newline).find("\"tag\":\"judge\""), std::string::npos);
  EXPECT_EQ(content.substr(newline + 1), "line one\nline two");
}

TEST(ReplayCacheTest, GatewayBatchIsByteIdenticalAcrossReplays) {
  TempDir dir;
  {
    Gateway gw(std::make_shared<CachedBackend>(dir.path(), CacheMode::kRecord,
                                               std::make_shared<StagedMockBackend>()));
    std::vector<CompletionRequest> reqs;
    for (int i = 0; i < 6; ++i) reqs.push_back(request("q" + std::to_string(i), "cot"));
    gw.complete_batch(reqs);
  }
  auto run = [&] {
    Gateway gw(std::make_shared<CachedBackend>(dir.path(), CacheMode::kReplay, nullptr));
    std::vector<CompletionRequest> reqs;
    for (int i = 0; i < 6; ++i) reqs.push_back(request("q" + std::to_string(i), "cot"));
    std::string all;
    for (const auto& r : gw.complete_batch(reqs)) all += r.completion.value().text + "\n";
    return all;
  };
  EXPECT_EQ(run(), run());
}

TEST(ReplayCacheTest, RecordModeNeedsInnerBackend) {
  TempDir dir;
  EXPECT_THROW(CachedBackend(dir.path(), CacheMode::kRecord, nullptr), UsageError);
}

}  // namespace
}  // namespace raisekit::llm

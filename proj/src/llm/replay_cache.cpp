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

#include "raisekit/llm/replay_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/hashing.hpp"

namespace raisekit::llm {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cache_key(const CompletionRequest& req) {
  char temp[32];
  std::snprintf(temp, sizeof(temp), "%.17g", req.temperature);
  std::string material = req.tag;
  material += '\n';
  material += sha256_hex(req.prompt);
  material += '\n';
  material += std::to_string(req.max_tokens);
  material += '\n';
  material += temp;
  return sha256_hex(material);
}

CachedBackend::CachedBackend(fs::path dir, CacheMode mode,
                             std::shared_ptr<CompletionBackend> inner)
    : dir_(std::move(dir)), mode_(mode), inner_(std::move(inner)) {
  if (mode_ == CacheMode::kRecord) {
    if (!inner_) throw UsageError("record mode needs an inner backend");
    fs::create_directories(dir_);
  }
}

std::string CachedBackend::id() const {
  return mode_ == CacheMode::kReplay ? "replay"
                                     : "record:" + inner_->id();
}

fs::path CachedBackend::entry_path(const CompletionRequest& req) const {
  return dir_ / (cache_key(req) + ".txt");
}

namespace {

std::optional<Completion> read_entry(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) {
    throw BackendError("corrupt cache entry " + path.string());
  }
  std::ostringstream body;
  body << in.rdbuf();
  json meta;
  try {
    meta = json::parse(header);
  } catch (const json::parse_error&) {
    throw BackendError("corrupt cache entry header in " + path.string());
  }
  Completion c;
  c.text = body.str();
  c.backend_id = meta.value("backend_id", std::string("unknown"));
  c.latency_ms = 0;
  if (meta.contains("token_counts") && meta["token_counts"].is_object()) {
    c.token_counts = TokenCounts{meta["token_counts"].value("prompt", 0),
                                 meta["token_counts"].value("completion", 0)};
  }
  return c;
}

void write_entry(const fs::path& path, const CompletionRequest& req, const Completion& c) {
  json meta{{"tag", req.tag},
            {"prompt_sha256", sha256_hex(req.prompt)},
            {"max_tokens", req.max_tokens},
            {"temperature", req.temperature},
            {"backend_id", c.backend_id}};
  if (c.token_counts) {
    meta["token_counts"] = {{"prompt", c.token_counts->prompt},
                            {"completion", c.token_counts->completion}};
  }
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  fs::path tmp = path;
  tmp += ".tmp." + tid.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BackendError("cannot write cache entry " + tmp.string());
    out << meta.dump() << '\n' << c.text;
  }
  fs::rename(tmp, path);
}

}  // namespace

Completion CachedBackend::complete(const CompletionRequest& req) {
  const fs::path path = entry_path(req);
  if (auto hit = read_entry(path)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  if (mode_ == CacheMode::kReplay) {
    throw CacheMissError("replay cache has no entry for tag '" + req.tag + "' (key " +
                         path.stem().string() + ")");
  }
  Completion c = inner_->complete(req);
  write_entry(path, req, c);
  return c;
}

}  // namespace raisekit::llm

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

#include "raisekit/config/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/hashing.hpp"

namespace raisekit::config {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool looks_secret(std::string_view key) {
  for (std::string_view word : {"api_key", "apikey", "secret", "token", "password"}) {
    if (key.find(word) != std::string_view::npos) return true;
  }
  return false;
}

const KeyInfo* find_key(std::string_view key) {
  for (const auto& k : schema()) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

}  // namespace

const std::vector<KeyInfo>& schema() {
  static const std::vector<KeyInfo> keys = {
      {"backend.kind", "staged-mock", "completion backend: staged-mock | http"},
      {"backend.url", "", "chat-completions endpoint URL for backend.kind=http"},
      {"backend.model", "", "model name sent to the completion endpoint"},
      {"backend.timeout_s", "120", "per-request timeout in seconds"},
      {"backend.max_retries", "3", "retries on transient backend failures"},
      {"backend.max_in_flight", "4", "concurrent completion requests"},
      {"embed.kind", "hash", "embedder: hash | http"},
      {"embed.url", "", "embedding endpoint URL for embed.kind=http"},
      {"embed.model", "", "embedding model name"},
      {"embed.dim", "768", "embedding dimension"},
      {"retrieval.k", "10", "passages retrieved per query"},
      {"retrieval.threshold", "0.84", "minimum similarity (strictly greater) to keep a passage"},
      {"engine.max_steps", "8", "maximum decomposition steps"},
      {"engine.workers", "4", "questions in flight"},
      {"engine.decompose_retries", "2", "re-prompts after an unparseable plan"},
      {"engine.max_tokens", "1024", "completion token limit per call"},
      {"engine.temperature", "0", "sampling temperature"},
      {"engine.document_budget", "6000", "characters of retrieved text per prompt"},
      {"engine.fallback_to_cot", "false", "answer with CoT when decomposition fails"},
      {"cache.dir", "", "record/replay cache directory (empty: no cache)"},
      {"cache.mode", "record", "record | replay"},
      {"prompts.dir", "", "prompt template directory (empty: built-in location)"},
      {"mock.seed", "0", "seed of the staged mock backend"},
  };
  return keys;
}

Config::Config() {
  for (const auto& k : schema()) values_.emplace(std::string(k.key), std::string(k.default_value));
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw LoadError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": expected 'key = value'");
    }
    try {
      cfg.set(trim(line.substr(0, eq)), std::string(trim(line.substr(eq + 1))));
    } catch (const UsageError& e) {
      throw UsageError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

void Config::set(std::string_view key, std::string value) {
  if (looks_secret(key)) {
    throw UsageError("config key '" + std::string(key) +
                     "' looks like a credential; set RAISE_API_KEY in the environment instead");
  }
  if (!find_key(key)) throw UsageError("unknown config key '" + std::string(key) + "'");
  values_.insert_or_assign(std::string(key), std::move(value));
}

const std::string& Config::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown config key '" + std::string(key) + "'");
  return it->second;
}

int Config::get_int(std::string_view key) const {
  const auto& v = get(key);
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw UsageError("config key '" + std::string(key) + "' expects an integer, got '" + v + "'");
  }
  return out;
}

double Config::get_double(std::string_view key) const {
  const auto& v = get(key);
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  throw UsageError("config key '" + std::string(key) + "' expects a number, got '" + v + "'");
}

bool Config::get_bool(std::string_view key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config key '" + std::string(key) + "' expects true/false, got '" + v + "'");
}

std::string Config::hash() const {
  std::string canonical;
  for (const auto& [k, v] : values_) canonical += k + "=" + v + "\n";
  return sha256_hex(canonical);
}

}  // namespace raisekit::config

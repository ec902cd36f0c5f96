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

#include "raisekit/retrieval/embedder.hpp"

#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/rng.hpp"
#include "raisekit/llm/http_transport.hpp"

namespace raisekit::retrieval {

namespace {

template <typename T>
std::vector<double> normalize_impl(std::span<const T> v) {
  double sq = 0.0;
  for (T x : v) sq += static_cast<double>(x) * static_cast<double>(x);
  const double norm = std::sqrt(sq);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateEmbeddingError("cannot normalize a zero or non-finite vector");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]) / norm;
  return out;
}

}  // namespace

std::vector<double> normalize(std::span<const float> v) { return normalize_impl(v); }
std::vector<double> normalize(std::span<const double> v) { return normalize_impl(v); }

HashEmbedder::HashEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim_ == 0) throw UsageError("embedding dimension must be positive");
}

std::string HashEmbedder::id() const {
  return "hash-mock:" + std::to_string(dim_) + ":" + std::to_string(seed_);
}

std::vector<float> HashEmbedder::embed_one(const std::string& text) const {
  std::vector<double> acc(dim_, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    SplitMix64 rng(derive_seed(seed_, token));
    for (auto& a : acc) a += 2.0 * rng.uniform() - 1.0;
    token.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      token += static_cast<char>(std::tolower(u));
    } else {
      flush();
    }
  }
  flush();
  return std::vector<float>(acc.begin(), acc.end());
}

std::vector<std::vector<float>> HashEmbedder::embed(std::span<const std::string> texts,
                                                    EncoderRole) {
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

struct HttpEmbedder::Impl {
  Impl(const std::string& url, std::chrono::seconds timeout)
      : transport(llm::parse_endpoint(url), timeout) {}
  llm::HttpTransport transport;
};

HttpEmbedder::HttpEmbedder(HttpEmbedderOptions options)
    : options_(std::move(options)),
      impl_(std::make_unique<Impl>(options_.url, options_.timeout)) {
  if (options_.model.empty()) throw UsageError("embedding backend needs a model name");
}

HttpEmbedder::~HttpEmbedder() = default;

std::vector<std::vector<float>> HttpEmbedder::embed(std::span<const std::string> texts,
                                                    EncoderRole role) {
  using nlohmann::json;
  json body{{"model", options_.model},
            {"input", std::vector<std::string>(texts.begin(), texts.end())},
            {"role", role == EncoderRole::kQuery ? "query" : "passage"}};
  std::vector<std::pair<std::string, std::string>> headers;
  if (!options_.api_key.empty()) {
    headers.emplace_back("Authorization", "Bearer " + options_.api_key);
  }
  json reply;
  try {
    reply = json::parse(impl_->transport.post_json(body.dump(), headers));
  } catch (const json::parse_error&) {
    throw BackendError("embedding backend returned non-JSON body");
  }
  std::vector<std::vector<float>> out;
  try {
    for (const auto& row : reply.at("embeddings")) out.push_back(row.get<std::vector<float>>());
  } catch (const json::exception& e) {
    throw BackendError(std::string("embedding reply lacks an embeddings array: ") + e.what());
  }
  if (out.size() != texts.size()) {
    throw BackendError("embedding backend returned " + std::to_string(out.size()) +
                       " vectors for " + std::to_string(texts.size()) + " texts");
  }
  return out;
}

}  // namespace raisekit::retrieval

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
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace raisekit::retrieval {

// Bi-encoders embed queries and passages with different towers; backends
// that have a single encoder ignore the role.
enum class EncoderRole { kQuery, kPassage };

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<std::vector<float>> embed(std::span<const std::string> texts,
                                                EncoderRole role) = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string id() const = 0;
};

// Deterministic offline embedder: the sum of one seeded pseudo-random vector
// per lowercased alphanumeric token. Texts sharing words land close together.
// A text without tokens embeds to the zero vector.
class HashEmbedder : public Embedder {
 public:
  explicit HashEmbedder(std::size_t dim = 768, std::uint64_t seed = 0);

  std::vector<std::vector<float>> embed(std::span<const std::string> texts,
                                        EncoderRole role) override;
  std::size_t dim() const override { return dim_; }
  std::string id() const override;

  std::vector<float> embed_one(const std::string& text) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

struct HttpEmbedderOptions {
  std::string url;
  std::string model;
  std::string api_key;
  std::size_t dim = 768;
  std::chrono::seconds timeout{120};
};

// POST {model, input:[texts], role:"query"|"passage"} -> {embeddings:[[float]]}.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpEmbedderOptions options);
  ~HttpEmbedder() override;

  std::vector<std::vector<float>> embed(std::span<const std::string> texts,
                                        EncoderRole role) override;
  std::size_t dim() const override { return options_.dim; }
  std::string id() const override { return "http:" + options_.model; }

 private:
  struct Impl;
  HttpEmbedderOptions options_;
  std::unique_ptr<Impl> impl_;
};

// v / ||v||_2 computed in double. Throws DegenerateEmbeddingError for a zero
// or non-finite vector.
std::vector<double> normalize(std::span<const float> v);
std::vector<double> normalize(std::span<const double> v);

}  // namespace raisekit::retrieval

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

#include <map>
#include <string>
#include <vector>

#include "raisekit/core/errors.hpp"
#include "raisekit/retrieval/embedder.hpp"

namespace raisekit::testing {

// Embedder answering from a fixed text -> vector table.
class FixedEmbedder : public retrieval::Embedder {
 public:
  FixedEmbedder(std::size_t dim, std::map<std::string, std::vector<float>> table)
      : dim_(dim), table_(std::move(table)) {}

  std::vector<std::vector<float>> embed(std::span<const std::string> texts,
                                        retrieval::EncoderRole) override {
    std::vector<std::vector<float>> out;
    for (const auto& t : texts) {
      auto it = table_.find(t);
      if (it == table_.end()) throw BackendError("no fixed embedding for '" + t + "'");
      out.push_back(it->second);
    }
    return out;
  }
  std::size_t dim() const override { return dim_; }
  std::string id() const override { return "fixed"; }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<float>> table_;
};

}  // namespace raisekit::testing

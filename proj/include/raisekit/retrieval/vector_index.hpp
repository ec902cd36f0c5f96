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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "raisekit/core/types.hpp"
#include "raisekit/retrieval/embedder.hpp"

namespace raisekit::retrieval {

inline constexpr std::size_t kDefaultDim = 768;
inline constexpr int kDefaultTopK = 10;
inline constexpr double kDefaultThreshold = 0.84;
inline constexpr double kUnitNormTolerance = 1e-5;

// Exact inner-product index over unit-norm float32 rows, row-aligned with
// the passages they embed. Immutable once built; concurrent searches are
// safe.
class VectorIndex {
 public:
  explicit VectorIndex(std::size_t dim);

  // Adopts already-normalised rows. Throws IndexFormatError if a row is not
  // unit-norm within kUnitNormTolerance or the sizes disagree.
  static VectorIndex from_rows(std::size_t dim, std::vector<float> rows,
                               std::vector<Passage> passages);

  // Normalises `embedding` and appends it; throws DegenerateEmbeddingError
  // for a zero vector and IndexBuildError on a dimension mismatch.
  void add(const Passage& passage, std::span<const float> embedding);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return passages_.size(); }
  bool empty() const { return passages_.empty(); }

  std::span<const float> row(std::size_t i) const {
    return {rows_.data() + i * dim_, dim_};
  }
  const std::vector<float>& rows() const { return rows_; }
  const Passage& passage(std::size_t i) const { return passages_[i]; }
  const std::vector<Passage>& passages() const { return passages_; }

  // Up to k passages with score strictly above `threshold`, by descending
  // score, ties by ascending passage id. `unit_query` must have dim()
  // entries; it is used as given.
  std::vector<ScoredPassage> search_vector(std::span<const double> unit_query, int k,
                                           double threshold) const;

 private:
  std::size_t dim_;
  std::vector<float> rows_;
  std::vector<Passage> passages_;
};

// Embeds passages in batches (EncoderRole::kPassage), normalises and stores
// them in input order. A vector of the wrong length or a zero vector raises
// IndexBuildError naming the passage id.
VectorIndex build_index(std::span<const Passage> passages, Embedder& embedder,
                        std::size_t dim = kDefaultDim, std::size_t batch_size = 64);

// Embeds (EncoderRole::kQuery) and normalises the query, then searches.
// Throws RetrievalError for an empty index or a degenerate query embedding.
std::vector<ScoredPassage> search(const VectorIndex& index, std::string_view query,
                                  Embedder& embedder, int k = kDefaultTopK,
                                  double threshold = kDefaultThreshold);

}  // namespace raisekit::retrieval

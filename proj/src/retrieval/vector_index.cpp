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

#include "raisekit/retrieval/vector_index.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "raisekit/core/errors.hpp"

namespace raisekit::retrieval {

namespace {

void require_unique_ids(std::span<const Passage> passages) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(passages.size());
  for (const auto& p : passages) {
    if (!seen.insert(p.id).second) {
      throw IndexBuildError("duplicate passage id " + p.id);
    }
  }
}

}  // namespace

VectorIndex::VectorIndex(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw UsageError("index dimension must be positive");
}

VectorIndex VectorIndex::from_rows(std::size_t dim, std::vector<float> rows,
                                   std::vector<Passage> passages) {
  VectorIndex index(dim);
  require_unique_ids(passages);
  if (rows.size() != passages.size() * dim) {
    throw IndexFormatError("row matrix holds " + std::to_string(rows.size()) +
                           " floats, expected " + std::to_string(passages.size() * dim));
  }
  for (std::size_t r = 0; r < passages.size(); ++r) {
    double sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = rows[r * dim + j];
      sq += x * x;
    }
    if (std::abs(std::sqrt(sq) - 1.0) > kUnitNormTolerance) {
      throw IndexFormatError("row " + std::to_string(r) + " (" + passages[r].id +
                             ") is not unit-norm");
    }
  }
  index.rows_ = std::move(rows);
  index.passages_ = std::move(passages);
  return index;
}

void VectorIndex::add(const Passage& passage, std::span<const float> embedding) {
  if (embedding.size() != dim_) {
    throw IndexBuildError("passage " + passage.id + " embedded to " +
                          std::to_string(embedding.size()) + " dimensions, index has " +
                          std::to_string(dim_));
  }
  const auto unit = normalize(embedding);
  rows_.insert(rows_.end(), unit.begin(), unit.end());
  passages_.push_back(passage);
}

namespace {

struct Hit {
  double score;
  std::size_t row;
};

}  // namespace

std::vector<ScoredPassage> VectorIndex::search_vector(std::span<const double> unit_query,
                                                      int k, double threshold) const {
  if (k < 1) throw UsageError("k must be >= 1");
  if (unit_query.size() != dim_) {
    throw RetrievalError("query has " + std::to_string(unit_query.size()) +
                         " dimensions, index has " + std::to_string(dim_));
  }
  // `better(a, b)`: a ranks before b.
  const auto better = [this](const Hit& a, const Hit& b) {
    if (a.score != b.score) return a.score > b.score;
    return passages_[a.row].id < passages_[b.row].id;
  };
  // Max-heap under `better` keeps the worst retained hit on top.
  std::priority_queue<Hit, std::vector<Hit>, decltype(better)> heap(better);
  const std::size_t cap = static_cast<std::size_t>(k);

  const double* q = unit_query.data();
  for (std::size_t r = 0; r < passages_.size(); ++r) {
    const float* x = rows_.data() + r * dim_;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= dim_; j += 4) {
      s0 += q[j] * x[j];
      s1 += q[j + 1] * x[j + 1];
      s2 += q[j + 2] * x[j + 2];
      s3 += q[j + 3] * x[j + 3];
    }
    for (; j < dim_; ++j) s0 += q[j] * x[j];
    const Hit hit{(s0 + s1) + (s2 + s3), r};
    if (!(hit.score > threshold)) continue;
    if (heap.size() < cap) {
      heap.push(hit);
    } else if (better(hit, heap.top())) {
      heap.pop();
      heap.push(hit);
    }
  }

  std::vector<Hit> hits;
  hits.reserve(heap.size());
  while (!heap.empty()) {
    hits.push_back(heap.top());
    heap.pop();
  }
  std::sort(hits.begin(), hits.end(), better);

  std::vector<ScoredPassage> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(ScoredPassage{passages_[h.row], h.score});
  return out;
}

VectorIndex build_index(std::span<const Passage> passages, Embedder& embedder,
                        std::size_t dim, std::size_t batch_size) {
  if (batch_size == 0) throw UsageError("batch size must be positive");
  require_unique_ids(passages);
  VectorIndex index(dim);
  for (std::size_t begin = 0; begin < passages.size(); begin += batch_size) {
    const std::size_t end = std::min(passages.size(), begin + batch_size);
    std::vector<std::string> texts;
    texts.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) texts.push_back(passages[i].text);
    const auto vectors = embedder.embed(texts, EncoderRole::kPassage);
    if (vectors.size() != texts.size()) {
      throw IndexBuildError("embedder returned " + std::to_string(vectors.size()) +
                            " vectors for a batch of " + std::to_string(texts.size()));
    }
    for (std::size_t i = begin; i < end; ++i) {
      try {
        index.add(passages[i], vectors[i - begin]);
      } catch (const DegenerateEmbeddingError&) {
        throw IndexBuildError("passage " + passages[i].id + " embedded to a zero vector");
      }
    }
  }
  return index;
}

std::vector<ScoredPassage> search(const VectorIndex& index, std::string_view query,
                                  Embedder& embedder, int k, double threshold) {
  if (index.empty()) throw RetrievalError("cannot search an empty index");
  const std::string text(query);
  const auto vectors = embedder.embed(std::span<const std::string>(&text, 1),
                                      EncoderRole::kQuery);
  if (vectors.size() != 1) throw RetrievalError("embedder returned no query vector");
  if (vectors[0].size() != index.dim()) {
    throw RetrievalError("query embedded to " + std::to_string(vectors[0].size()) +
                         " dimensions, index has " + std::to_string(index.dim()));
  }
  std::vector<double> unit;
  try {
    unit = normalize(vectors[0]);
  } catch (const DegenerateEmbeddingError&) {
    throw RetrievalError("query embedding is degenerate");
  }
  return index.search_vector(unit, k, threshold);
}

}  // namespace raisekit::retrieval

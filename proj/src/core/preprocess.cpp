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

#include "raisekit/core/preprocess.hpp"

#include <numeric>
#include <utility>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/rng.hpp"

namespace raisekit {

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t stream_seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng(stream_seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

Question shuffle_choices(const Question& q, std::uint64_t seed) {
  if (!q.gold_label || q.gold_label->index() >= q.choices.size()) {
    throw PreprocessError("question " + q.id + " has no known correct choice to shuffle");
  }
  // perm[new_position] = old_position
  const auto perm = seeded_permutation(q.choices.size(), derive_seed(seed, q.id));
  Question out = q;
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    out.choices[pos] = Choice{Label::from_index(pos), q.choices[perm[pos]].text};
    if (perm[pos] == q.gold_label->index()) out.gold_label = Label::from_index(pos);
  }
  return out;
}

}  // namespace raisekit

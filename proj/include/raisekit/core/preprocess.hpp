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

#include <cstdint>
#include <vector>

#include "raisekit/core/types.hpp"

namespace raisekit {

// Seed-deterministic Fisher-Yates permutation of size n. The stream seed is
// used as-is; callers mix in per-item identity beforehand.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t stream_seed);

// Reassigns the choice texts of q to labels A.. using a permutation drawn from
// (seed, q.id); gold_label follows the originally correct text.
// Throws PreprocessError if q has no gold label.
Question shuffle_choices(const Question& q, std::uint64_t seed);

}  // namespace raisekit

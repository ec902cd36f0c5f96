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
#include <string>
#include <string_view>
#include <vector>

#include "raisekit/core/types.hpp"

namespace raisekit::retrieval {

inline constexpr std::size_t kPassageWords = 100;

// Maximal runs of non-whitespace bytes.
std::vector<std::string_view> split_words(std::string_view text);

// Consecutive disjoint blocks of `words_per_passage` words (the last block
// holds the remainder), words re-joined with single spaces. Passage ids are
// "{doc_id}#{block}" with 0-based blocks. Whitespace-only text yields nothing.
std::vector<Passage> chunk(std::string_view doc_id, std::string_view title,
                           std::string_view text,
                           std::size_t words_per_passage = kPassageWords);

}  // namespace raisekit::retrieval

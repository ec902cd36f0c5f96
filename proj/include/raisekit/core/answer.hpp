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
#include <optional>
#include <string_view>

#include "raisekit/core/types.hpp"

namespace raisekit {

// Letter of the last "The final answer is (X)" statement whose X is one of
// the first `label_count` labels. Markdown emphasis, a colon, and a
// \boxed{...} wrapper around the parenthesised letter are tolerated.
std::optional<Label> extract_final_answer(std::string_view text,
                                          std::size_t label_count = 4);

}  // namespace raisekit

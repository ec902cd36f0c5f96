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
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "raisekit/core/types.hpp"

namespace raisekit {

using Json = nlohmann::json;

// Calls fn(line_number, record) for every non-blank line; a line that is not
// a JSON object raises LoadError naming the file and the 1-based line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const Json&)>& fn);

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

// {id, question, choices:[...], answer_index | answer_label, domain, dataset}
Question question_from_record(const Json& record, std::size_t min_choices,
                              std::size_t max_choices);
Json question_to_record(const Question& q);

Json to_json(const StrategySpec& spec);
StrategySpec strategy_from_json(const Json& j);

Json to_json(const ScoredPassage& p);
ScoredPassage scored_passage_from_json(const Json& j);

// Timings are wall-clock and excluded unless asked for, so that persisted
// traces of identical runs compare byte-equal.
Json to_json(const ReasoningTrace& trace, bool include_timings = false);
ReasoningTrace trace_from_json(const Json& j);

}  // namespace raisekit

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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raisekit/core/types.hpp"

namespace raisekit::bench {

// GPQA inputs must have exactly four choices and get their choice order
// shuffled per question; the other kinds accept 4-10 choices as stored.
enum class DatasetKind { kGpqa, kSuperGpqa, kMmlu, kGeneric };

std::string_view to_string(DatasetKind kind);
std::optional<DatasetKind> parse_dataset_kind(std::string_view name);

struct Dataset {
  std::string id;  // column name in reports
  DatasetKind kind = DatasetKind::kGeneric;
  std::vector<Question> questions;
};

// Reads one MCQ record per line. Records without a "dataset" field take
// `dataset_id` (defaulting to the file stem). Throws LoadError naming the
// file and line of the first bad record, including duplicate ids.
Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind, std::uint64_t seed,
                     std::string dataset_id = {});

// min(n, |questions|) questions drawn uniformly without replacement,
// returned in input order. Deterministic in `seed`.
std::vector<Question> sample_subset(std::span<const Question> questions, std::size_t n,
                                    std::uint64_t seed);

}  // namespace raisekit::bench

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

#include "raisekit/bench/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/preprocess.hpp"
#include "raisekit/core/records.hpp"
#include "raisekit/core/rng.hpp"

namespace raisekit::bench {

namespace {

struct KindName {
  DatasetKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {DatasetKind::kGpqa, "gpqa"},
    {DatasetKind::kSuperGpqa, "supergpqa"},
    {DatasetKind::kMmlu, "mmlu"},
    {DatasetKind::kGeneric, "generic"},
};

}  // namespace

std::string_view to_string(DatasetKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  throw InvariantError("unknown dataset kind");
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind, std::uint64_t seed,
                     std::string dataset_id) {
  Dataset ds;
  ds.id = dataset_id.empty() ? path.stem().string() : std::move(dataset_id);
  ds.kind = kind;
  const bool gpqa = kind == DatasetKind::kGpqa;
  const std::size_t min_choices = 4;
  const std::size_t max_choices = gpqa ? 4 : Label::kMaxLabels;

  std::set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t line, const Json& record) {
    const auto where = path.string() + ":" + std::to_string(line) + ": ";
    Question q;
    try {
      q = question_from_record(record, min_choices, max_choices);
      if (gpqa) q = shuffle_choices(q, seed);
    } catch (const Error& e) {
      throw LoadError(where + e.what());
    }
    if (q.dataset.empty()) q.dataset = ds.id;
    if (!seen.insert(q.id).second) throw LoadError(where + "duplicate question id " + q.id);
    ds.questions.push_back(std::move(q));
  });
  return ds;
}

std::vector<Question> sample_subset(std::span<const Question> questions, std::size_t n,
                                    std::uint64_t seed) {
  const std::size_t total = questions.size();
  const std::size_t m = std::min(n, total);
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first m slots become a uniform m-subset.
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  std::vector<Question> out;
  out.reserve(m);
  for (auto i : idx) out.push_back(questions[i]);
  return out;
}

}  // namespace raisekit::bench

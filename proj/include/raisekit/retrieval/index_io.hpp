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
#include <filesystem>

#include "raisekit/retrieval/vector_index.hpp"

namespace raisekit::retrieval {

// On-disk layout, all integers little-endian:
//   char[4]  magic "RAIV"
//   u16      version (1)
//   u32      dim
//   u64      count
//   u16      dtype code (1 = float32)
//   f32[count * dim]   row-major unit vectors
//   count x (u32 byte length, id bytes)
// Passages live in a sidecar "<file>.passages.jsonl", one {id, title, text}
// per row in row order.
inline constexpr char kIndexMagic[4] = {'R', 'A', 'I', 'V'};
inline constexpr std::uint16_t kIndexVersion = 1;
inline constexpr std::uint16_t kDtypeFloat32 = 1;

struct IndexHeader {
  std::uint16_t version = 0;
  std::uint32_t dim = 0;
  std::uint64_t count = 0;
  std::uint16_t dtype = 0;
};

std::filesystem::path passage_store_path(const std::filesystem::path& index_path);

void save_index(const VectorIndex& index, const std::filesystem::path& path);

// Throws IndexFormatError on a bad magic, version, dtype, truncated data,
// rows that are not unit-norm, or a passage store that disagrees with the
// id table.
VectorIndex load_index(const std::filesystem::path& path);

IndexHeader read_index_header(const std::filesystem::path& path);

}  // namespace raisekit::retrieval

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

#include "raisekit/retrieval/index_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/records.hpp"

namespace raisekit::retrieval {

namespace fs = std::filesystem;

namespace {

template <typename T>
void put_le(std::string& buf, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf += static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
}

template <typename T>
T get_le(std::istream& in, const fs::path& path) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw IndexFormatError(path.string() + ": truncated index file");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return static_cast<T>(v);
}

IndexHeader read_header(std::istream& in, const fs::path& path) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kIndexMagic, 4) != 0) {
    throw IndexFormatError(path.string() + ": not a RAIV index file");
  }
  IndexHeader h;
  h.version = get_le<std::uint16_t>(in, path);
  h.dim = get_le<std::uint32_t>(in, path);
  h.count = get_le<std::uint64_t>(in, path);
  h.dtype = get_le<std::uint16_t>(in, path);
  if (h.version != kIndexVersion) {
    throw IndexFormatError(path.string() + ": unsupported index version " +
                           std::to_string(h.version));
  }
  if (h.dtype != kDtypeFloat32) {
    throw IndexFormatError(path.string() + ": unsupported dtype code " +
                           std::to_string(h.dtype));
  }
  if (h.dim == 0) throw IndexFormatError(path.string() + ": zero dimension");
  return h;
}

}  // namespace

fs::path passage_store_path(const fs::path& index_path) {
  fs::path p = index_path;
  p += ".passages.jsonl";
  return p;
}

void save_index(const VectorIndex& index, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::string buf;
  buf.reserve(20 + index.rows().size() * 4);
  buf.append(kIndexMagic, 4);
  put_le<std::uint16_t>(buf, kIndexVersion);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(index.dim()));
  put_le<std::uint64_t>(buf, index.size());
  put_le<std::uint16_t>(buf, kDtypeFloat32);
  for (float f : index.rows()) put_le<std::uint32_t>(buf, std::bit_cast<std::uint32_t>(f));
  for (const auto& p : index.passages()) {
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(p.id.size()));
    buf += p.id;
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
      throw IndexBuildError("cannot write index " + path.string());
    }
  }
  std::vector<Json> records;
  records.reserve(index.size());
  for (const auto& p : index.passages()) {
    records.push_back(Json{{"id", p.id}, {"title", p.title}, {"text", p.text}});
  }
  write_jsonl(passage_store_path(path), records);
}

IndexHeader read_index_header(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError("cannot open index " + path.string());
  return read_header(in, path);
}

VectorIndex load_index(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError("cannot open index " + path.string());
  const IndexHeader h = read_header(in, path);

  const std::uint64_t n_floats = h.count * h.dim;
  const auto file_size = fs::file_size(path);
  if (n_floats > file_size / 4) throw IndexFormatError(path.string() + ": truncated row data");

  std::vector<float> rows(n_floats);
  std::vector<unsigned char> raw(n_floats * 4);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw IndexFormatError(path.string() + ": truncated row data");
  }
  for (std::uint64_t i = 0; i < n_floats; ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(raw[i * 4 + b]) << (8 * b);
    rows[i] = std::bit_cast<float>(bits);
  }

  std::vector<std::string> ids;
  ids.reserve(h.count);
  for (std::uint64_t i = 0; i < h.count; ++i) {
    const auto len = get_le<std::uint32_t>(in, path);
    std::string id(len, '\0');
    if (len > file_size || !in.read(id.data(), len)) {
      throw IndexFormatError(path.string() + ": truncated id table");
    }
    ids.push_back(std::move(id));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IndexFormatError(path.string() + ": trailing bytes after id table");
  }

  std::vector<Passage> passages;
  passages.reserve(h.count);
  for_each_jsonl(passage_store_path(path), [&](std::size_t line, const Json& r) {
    const std::size_t row = passages.size();
    Passage p{r.at("id").get<std::string>(), r.value("title", std::string()),
              r.at("text").get<std::string>()};
    if (row >= ids.size() || p.id != ids[row]) {
      throw IndexFormatError("passage store line " + std::to_string(line) +
                             " does not match index row " + std::to_string(row));
    }
    passages.push_back(std::move(p));
  });
  if (passages.size() != ids.size()) {
    throw IndexFormatError("passage store holds " + std::to_string(passages.size()) +
                           " passages, index has " + std::to_string(ids.size()));
  }
  return VectorIndex::from_rows(h.dim, std::move(rows), std::move(passages));
}

}  // namespace raisekit::retrieval

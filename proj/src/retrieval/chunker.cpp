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

#include "raisekit/retrieval/chunker.hpp"

#include <cctype>

#include "raisekit/core/errors.hpp"

namespace raisekit::retrieval {

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::vector<Passage> chunk(std::string_view doc_id, std::string_view title,
                           std::string_view text, std::size_t words_per_passage) {
  if (words_per_passage == 0) throw UsageError("words_per_passage must be positive");
  const auto words = split_words(text);
  std::vector<Passage> out;
  out.reserve((words.size() + words_per_passage - 1) / words_per_passage);
  for (std::size_t begin = 0; begin < words.size(); begin += words_per_passage) {
    const std::size_t end = std::min(words.size(), begin + words_per_passage);
    Passage p;
    p.id = std::string(doc_id) + "#" + std::to_string(out.size());
    p.title = std::string(title);
    for (std::size_t w = begin; w < end; ++w) {
      if (w > begin) p.text += ' ';
      p.text += words[w];
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace raisekit::retrieval

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

#include <gtest/gtest.h>

#include <random>

#include "raisekit/retrieval/chunker.hpp"

namespace raisekit::retrieval {
namespace {

std::string words(std::size_t n, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? sep : "") + ("w" + std::to_string(i));
  return out;
}

TEST(ChunkerTest, TwoHundredFiftyWordsMakeThreePassages) {
  const auto p = chunk("doc", "Title", words(250));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(split_words(p[0].text).size(), 100u);
  EXPECT_EQ(split_words(p[1].text).size(), 100u);
  EXPECT_EQ(split_words(p[2].text).size(), 50u);
  EXPECT_EQ(p[0].id, "doc#0");
  EXPECT_EQ(p[2].id, "doc#2");
  EXPECT_EQ(p[1].title, "Title");
}

TEST(ChunkerTest, ExactlyOneHundredWordsIsOnePassage) {
  EXPECT_EQ(chunk("d", "t", words(100)).size(), 1u);
  EXPECT_EQ(chunk("d", "t", words(101)).size(), 2u);
}

TEST(ChunkerTest, EmptyDocumentYieldsNothing) {
  EXPECT_TRUE(chunk("d", "t", "").empty());
  EXPECT_TRUE(chunk("d", "t", " \n\t ").empty());
}

TEST(ChunkerTest, WordsAreMaximalNonWhitespaceRuns) {
  const auto w = split_words("  a\tb\n\nc  d-e ");
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[3], "d-e");
  EXPECT_EQ(chunk("d", "t", "a\t\tb\nc")[0].text, "a b c");
}

TEST(ChunkerTest, DisjointCoverOverRandomDocuments) {
  std::mt19937 rng(5);
  const char* seps[] = {" ", "  ", "\n", "\t", " \n "};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng() % 1200;
    std::string doc;
    std::vector<std::string> expected;
    for (std::size_t i = 0; i < n; ++i) {
      expected.push_back("t" + std::to_string(rng() % 97));
      doc += seps[rng() % 5] + expected.back();
    }
    std::vector<std::string> got;
    const auto passages = chunk("d", "t", doc);
    for (std::size_t i = 0; i < passages.size(); ++i) {
      const auto w = split_words(passages[i].text);
      if (i + 1 < passages.size()) EXPECT_EQ(w.size(), 100u);
      EXPECT_LE(w.size(), 100u);
      EXPECT_FALSE(w.empty());
      got.insert(got.end(), w.begin(), w.end());
    }
    EXPECT_EQ(got, expected);
  }
}

}  // namespace
}  // namespace raisekit::retrieval

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

#include "raisekit/core/answer.hpp"

namespace raisekit {
namespace {

std::optional<char> letter(std::string_view text, std::size_t labels = 4) {
  auto l = extract_final_answer(text, labels);
  return l ? std::optional<char>(l->letter()) : std::nullopt;
}

TEST(ExtractFinalAnswerTest, ReadsTrailingStatement) {
  EXPECT_EQ(letter("...so pressure doubles. The final answer is (B)."), 'B');
}

TEST(ExtractFinalAnswerTest, LastOccurrenceWins) {
  EXPECT_EQ(letter("The final answer is (A)... wait, The final answer is (C)"), 'C');
}

TEST(ExtractFinalAnswerTest, AbsentPatternIsUnparsed) {
  EXPECT_FALSE(letter("The answer is B").has_value());
  EXPECT_FALSE(letter("").has_value());
  EXPECT_FALSE(letter("The final answer is B").has_value());
}

TEST(ExtractFinalAnswerTest, ToleratesMarkupAndCase) {
  EXPECT_EQ(letter("**The final answer is (d)**"), 'D');
  EXPECT_EQ(letter("THE FINAL ANSWER IS: (A)"), 'A');
  EXPECT_EQ(letter("the final answer is $\\boxed{(C)}$"), 'C');
  EXPECT_EQ(letter("The final answer is ( **B** )!"), 'B');
}

TEST(ExtractFinalAnswerTest, IgnoresLettersOutsideLabelSet) {
  EXPECT_FALSE(letter("The final answer is (E).").has_value());
  EXPECT_EQ(letter("The final answer is (B). The final answer is (E)."), 'B');
  EXPECT_EQ(letter("The final answer is (E).", 5), 'E');
}

TEST(ExtractFinalAnswerTest, PureFunctionOverRandomText) {
  std::mt19937 rng(1);
  const std::string alphabet = "The final answer is (ABCDE) .*\n";
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (int i = 0; i < 80; ++i) s += alphabet[rng() % alphabet.size()];
    EXPECT_EQ(extract_final_answer(s), extract_final_answer(s));
  }
}

}  // namespace
}  // namespace raisekit

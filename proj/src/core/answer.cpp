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

#include "raisekit/core/answer.hpp"

#include <cctype>
#include <string>

namespace raisekit {

namespace {

constexpr std::string_view kPhrase = "the final answer is";

bool is_markup(char c) {
  return c == ' ' || c == '\t' || c == '*' || c == '_' || c == '`' || c == '$';
}

std::size_t skip(std::string_view s, std::size_t pos, bool allow_colon) {
  while (pos < s.size()) {
    char c = s[pos];
    if (is_markup(c) || (allow_colon && c == ':')) {
      ++pos;
      continue;
    }
    if (s.substr(pos, 7) == "\\boxed{") {
      pos += 7;
      continue;
    }
    break;
  }
  return pos;
}

// Parses "(X)" starting at pos, allowing markup inside the parentheses.
std::optional<char> parse_letter(std::string_view s, std::size_t pos) {
  pos = skip(s, pos, true);
  if (pos >= s.size() || s[pos] != '(') return std::nullopt;
  pos = skip(s, pos + 1, false);
  if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) {
    return std::nullopt;
  }
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
  pos = skip(s, pos + 1, false);
  if (pos >= s.size() || s[pos] != ')') return std::nullopt;
  return letter;
}

}  // namespace

std::optional<Label> extract_final_answer(std::string_view text,
                                          std::size_t label_count) {
  std::string lowered(text);
  for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  std::optional<Label> last;
  std::size_t pos = lowered.find(kPhrase);
  while (pos != std::string::npos) {
    if (auto letter = parse_letter(text, pos + kPhrase.size())) {
      if (auto label = Label::from_char(*letter, label_count)) last = label;
    }
    pos = lowered.find(kPhrase, pos + 1);
  }
  return last;
}

}  // namespace raisekit

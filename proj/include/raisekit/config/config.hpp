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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace raisekit::config {

// One documented key of the config file.
struct KeyInfo {
  std::string_view key;
  std::string_view default_value;
  std::string_view description;
};

// Every accepted key, in documentation order.
const std::vector<KeyInfo>& schema();

// Key-value configuration: a file of `key = value` lines ('#' starts a
// comment) overlaid by command-line overrides. Unknown keys are rejected,
// as is anything that looks like a credential: secrets come only from the
// environment.
class Config {
 public:
  Config();  // all defaults

  // Throws LoadError on unreadable files or malformed lines, UsageError on
  // unknown or secret-bearing keys.
  static Config load(const std::filesystem::path& path);
  static Config parse(std::string_view text, std::string_view origin = "<config>");

  void set(std::string_view key, std::string value);

  const std::string& get(std::string_view key) const;
  int get_int(std::string_view key) const;
  double get_double(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

  // SHA-256 over the sorted "key=value" lines of the effective settings.
  std::string hash() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace raisekit::config

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
#include <string>
#include <vector>

#include "raisekit/core/records.hpp"
#include "raisekit/core/types.hpp"

namespace raisekit::engine {

// Run directory layout:
//   traces.jsonl   one trace per question, input order, no timings
//   timings.jsonl  {question_id, timings_ms} per question
//   manifest.json  RunManifest
// Traces are kept free of wall-clock data so that replayed runs produce
// byte-identical trace files.
inline constexpr const char* kTracesFile = "traces.jsonl";
inline constexpr const char* kTimingsFile = "timings.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";

struct RunManifest {
  StrategySpec spec;
  std::string dataset;
  std::string config_hash;
  std::string backend_id;
  std::string embedder_id;  // empty for non-retrieval strategies
  std::string started_at;   // ISO-8601 UTC
  std::string finished_at;
  std::size_t questions = 0;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

void write_run(const std::filesystem::path& dir, const RunManifest& manifest,
               const std::vector<ReasoningTrace>& traces);

struct StoredRun {
  RunManifest manifest;
  std::vector<ReasoningTrace> traces;
};

// Reads manifest and traces; timings are merged back when present.
StoredRun read_run(const std::filesystem::path& dir);

std::vector<ReasoningTrace> read_traces(const std::filesystem::path& traces_file);

}  // namespace raisekit::engine

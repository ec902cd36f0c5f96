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

#include "raisekit/engine/run_store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>

#include "raisekit/core/errors.hpp"

namespace raisekit::engine {

namespace fs = std::filesystem;

Json to_json(const RunManifest& m) {
  return Json{{"strategy", raisekit::to_json(m.spec)},
              {"dataset", m.dataset},
              {"config_hash", m.config_hash},
              {"backend_id", m.backend_id},
              {"embedder_id", m.embedder_id},
              {"started_at", m.started_at},
              {"finished_at", m.finished_at},
              {"questions", m.questions}};
}

RunManifest manifest_from_json(const Json& j) {
  try {
    RunManifest m;
    m.spec = strategy_from_json(j.at("strategy"));
    m.dataset = j.at("dataset").get<std::string>();
    m.config_hash = j.value("config_hash", "");
    m.backend_id = j.value("backend_id", "");
    m.embedder_id = j.value("embedder_id", "");
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    m.questions = j.value("questions", std::size_t{0});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed run manifest: ") + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_run(const fs::path& dir, const RunManifest& manifest,
               const std::vector<ReasoningTrace>& traces) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw LoadError("cannot create run directory " + dir.string() + ": " + ec.message());

  std::vector<Json> trace_records;
  std::vector<Json> timing_records;
  trace_records.reserve(traces.size());
  for (const auto& t : traces) {
    trace_records.push_back(raisekit::to_json(t));
    timing_records.push_back(Json{{"question_id", t.question_id}, {"timings_ms", t.timings_ms}});
  }
  write_jsonl(dir / kTracesFile, trace_records);
  write_jsonl(dir / kTimingsFile, timing_records);

  std::ofstream out(dir / kManifestFile, std::ios::binary | std::ios::trunc);
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw LoadError("cannot write " + (dir / kManifestFile).string());
}

std::vector<ReasoningTrace> read_traces(const fs::path& traces_file) {
  std::vector<ReasoningTrace> traces;
  for_each_jsonl(traces_file, [&](std::size_t line, const Json& j) {
    try {
      traces.push_back(trace_from_json(j));
    } catch (const Error& e) {
      throw LoadError(traces_file.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return traces;
}

StoredRun read_run(const fs::path& dir) {
  StoredRun run;
  const fs::path manifest_path = dir / kManifestFile;
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + manifest_path.string());
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(manifest_path.string() + ": " + e.what());
  }
  run.manifest = manifest_from_json(manifest);
  run.traces = read_traces(dir / kTracesFile);

  if (fs::exists(dir / kTimingsFile)) {
    std::map<std::string, std::map<std::string, double>> timings;
    for_each_jsonl(dir / kTimingsFile, [&](std::size_t, const Json& j) {
      timings[j.value("question_id", "")] =
          j.value("timings_ms", std::map<std::string, double>{});
    });
    for (auto& t : run.traces) {
      if (auto it = timings.find(t.question_id); it != timings.end()) t.timings_ms = it->second;
    }
  }
  return run;
}

}  // namespace raisekit::engine

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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raisekit/bench/dataset.hpp"
#include "raisekit/core/records.hpp"
#include "raisekit/core/types.hpp"
#include "raisekit/engine/reasoning_engine.hpp"
#include "raisekit/engine/run_store.hpp"

namespace raisekit::bench {

// Relative gain of `method` over `baseline` in percent: (m - b) / b * 100.
// Throws ScoringError when the baseline is zero.
double relative_gain(double method, double baseline);
// relative_gain rounded half away from zero to one decimal place.
double rounded_gain(double method, double baseline);

struct DomainScore {
  int n = 0;
  int correct = 0;
  double accuracy = 0.0;  // fraction
};

struct Cell {
  std::string dataset;
  StrategyKind strategy = StrategyKind::kCot;
  int n = 0;
  int correct = 0;
  double accuracy = 0.0;  // fraction in [0, 1]
  std::map<std::string, DomainScore> per_domain;
  // Set for RAISE-family rows when a complete baseline exists in the column.
  std::optional<double> gain_vs_best_baseline;
  // Some questions aborted with a run error; not used for best-of selection.
  bool incomplete = false;
  int run_errors = 0;
};

struct ReportMeta {
  std::vector<std::string> config_hashes;
  std::map<std::string, std::uint64_t> seeds;  // strategy id -> seed
  std::vector<std::string> backend_ids;
};

struct ResultTable {
  std::vector<std::string> datasets;      // column order
  std::vector<StrategyKind> strategies;   // row order
  std::vector<Cell> cells;
  ReportMeta meta;

  const Cell* find(const std::string& dataset, StrategyKind kind) const;
  // Highest complete non-RAISE cell of a column, if any.
  const Cell* best_baseline(const std::string& dataset) const;
  // Highest complete cell of a column, if any.
  const Cell* best_overall(const std::string& dataset) const;
};

struct CellRun {
  engine::RunManifest manifest;  // dataset, spec and backend ids of the cell
  std::vector<ReasoningTrace> traces;
};

// Scores each run from its traces alone (gold labels travel with traces)
// and fills in gains. Rows and columns follow first appearance in `runs`;
// reproducibility metadata is gathered from the manifests, never timestamps.
ResultTable build_table(std::span<const CellRun> runs);

// Executes every (dataset, spec) cell sequentially; each cell runs its
// questions through the engine's worker pool. When `runs_dir` is set each
// cell is persisted to runs_dir/<dataset>/<strategy>/ and the cell order to
// runs_dir/matrix.json.
struct MatrixOptions {
  std::optional<std::filesystem::path> runs_dir;
  std::string config_hash;
  std::string backend_id;
  std::string embedder_id;
};

ResultTable run_matrix(std::span<const Dataset> datasets, std::span<const StrategySpec> specs,
                       const engine::ReasoningEngine& engine, const MatrixOptions& options = {});

inline constexpr const char* kMatrixFile = "matrix.json";

// Rebuilds a table from persisted run directories, in the given order.
ResultTable table_from_runs(std::span<const std::filesystem::path> run_dirs);
// Run directories below `root`: the order recorded in matrix.json when
// present, otherwise every directory holding a manifest, sorted by path.
std::vector<std::filesystem::path> find_run_dirs(const std::filesystem::path& root);

Json to_json(const ResultTable& table);

// Markdown table in the usual layout: one row per strategy, one column per
// dataset, accuracies in percent. The best baseline in each column is
// underlined (_x_), the best entry overall bold (**x**), RAISE-family rows
// carry their relative gain, incomplete cells render as "—". Contains no
// timestamps so re-emission from the same traces is byte-identical.
std::string render_report(const ResultTable& table);

// Writes report.md and results.json into `out_dir`.
void emit_report(const ResultTable& table, const std::filesystem::path& out_dir);

}  // namespace raisekit::bench

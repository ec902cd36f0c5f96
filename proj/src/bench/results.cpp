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

#include "raisekit/bench/results.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "raisekit/core/errors.hpp"
#include "raisekit/core/scoring.hpp"

namespace raisekit::bench {

namespace fs = std::filesystem;

double relative_gain(double method, double baseline) {
  if (baseline == 0.0) throw ScoringError("relative gain against a zero baseline");
  return (method - baseline) / baseline * 100.0;
}

double rounded_gain(double method, double baseline) {
  return std::round(relative_gain(method, baseline) * 10.0) / 10.0;
}

const Cell* ResultTable::find(const std::string& dataset, StrategyKind kind) const {
  for (const auto& c : cells) {
    if (c.dataset == dataset && c.strategy == kind) return &c;
  }
  return nullptr;
}

namespace {

const Cell* best_of(const ResultTable& t, const std::string& dataset, bool baselines_only) {
  const Cell* best = nullptr;
  // Row order breaks ties: the first row wins.
  for (auto kind : t.strategies) {
    if (baselines_only && is_raise_family(kind)) continue;
    const Cell* c = t.find(dataset, kind);
    if (!c || c->incomplete || c->n == 0) continue;
    if (!best || c->accuracy > best->accuracy) best = c;
  }
  return best;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string signed_gain(double gain) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f%%", gain);
  return buf;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& item) {
  if (std::find(v.begin(), v.end(), item) == v.end()) v.push_back(item);
}

}  // namespace

const Cell* ResultTable::best_baseline(const std::string& dataset) const {
  return best_of(*this, dataset, true);
}

const Cell* ResultTable::best_overall(const std::string& dataset) const {
  return best_of(*this, dataset, false);
}

ResultTable build_table(std::span<const CellRun> runs) {
  ResultTable table;
  for (const auto& run : runs) {
    const auto& m = run.manifest;
    if (!m.config_hash.empty()) push_unique(table.meta.config_hashes, m.config_hash);
    if (!m.backend_id.empty()) push_unique(table.meta.backend_ids, m.backend_id);
    if (!m.embedder_id.empty()) push_unique(table.meta.backend_ids, m.embedder_id);
    table.meta.seeds[std::string(to_string(m.spec.kind))] = m.spec.seed;

    push_unique(table.datasets, m.dataset);
    push_unique(table.strategies, m.spec.kind);
    if (table.find(m.dataset, m.spec.kind)) {
      throw UsageError("duplicate cell " + m.dataset + " / " +
                       std::string(to_string(m.spec.kind)));
    }
    Cell cell;
    cell.dataset = m.dataset;
    cell.strategy = m.spec.kind;
    if (!run.traces.empty()) {
      const ScoreTally tally = tally_recorded(run.traces);
      cell.n = tally.n;
      cell.correct = tally.correct;
      cell.accuracy = tally.accuracy();
      for (const auto& [domain, d] : tally.per_domain) {
        cell.per_domain[domain] =
            DomainScore{d.n, d.correct, d.n == 0 ? 0.0 : static_cast<double>(d.correct) / d.n};
      }
    }
    for (const auto& t : run.traces) {
      if (t.error) ++cell.run_errors;
    }
    cell.incomplete = run.traces.empty() || cell.run_errors > 0;
    table.cells.push_back(std::move(cell));
  }
  for (auto& cell : table.cells) {
    if (!is_raise_family(cell.strategy) || cell.incomplete) continue;
    const Cell* best = table.best_baseline(cell.dataset);
    if (best && best->accuracy > 0.0) {
      cell.gain_vs_best_baseline = rounded_gain(cell.accuracy, best->accuracy);
    }
  }
  return table;
}

ResultTable run_matrix(std::span<const Dataset> datasets, std::span<const StrategySpec> specs,
                       const engine::ReasoningEngine& engine, const MatrixOptions& options) {
  std::vector<CellRun> runs;
  Json order = Json::array();
  for (const auto& ds : datasets) {
    for (const auto& spec : specs) {
      CellRun run;
      auto& m = run.manifest;
      m.started_at = engine::utc_timestamp();
      run.traces = engine.run_all(ds.questions, spec);
      m.finished_at = engine::utc_timestamp();
      m.spec = spec;
      m.dataset = ds.id;
      m.config_hash = options.config_hash;
      m.backend_id = options.backend_id;
      m.embedder_id = uses_retrieval(spec.kind) ? options.embedder_id : "";
      m.questions = run.traces.size();
      if (options.runs_dir) {
        const auto rel = fs::path(ds.id) / std::string(to_string(spec.kind));
        engine::write_run(*options.runs_dir / rel, m, run.traces);
        order.push_back(rel.generic_string());
      }
      runs.push_back(std::move(run));
    }
  }
  if (options.runs_dir) {
    std::ofstream out(*options.runs_dir / kMatrixFile, std::ios::binary | std::ios::trunc);
    out << Json{{"cells", order}}.dump(2) << '\n';
    if (!out) throw LoadError("cannot write " + (*options.runs_dir / kMatrixFile).string());
  }
  return build_table(runs);
}

ResultTable table_from_runs(std::span<const fs::path> run_dirs) {
  std::vector<CellRun> runs;
  for (const auto& dir : run_dirs) {
    auto stored = engine::read_run(dir);
    runs.push_back(CellRun{std::move(stored.manifest), std::move(stored.traces)});
  }
  return build_table(runs);
}

std::vector<fs::path> find_run_dirs(const fs::path& root) {
  if (!fs::is_directory(root)) throw LoadError("not a directory: " + root.string());
  std::vector<fs::path> dirs;
  if (fs::exists(root / kMatrixFile)) {
    std::ifstream in(root / kMatrixFile, std::ios::binary);
    try {
      const Json matrix = Json::parse(in);
      for (const auto& rel : matrix.at("cells")) dirs.push_back(root / rel.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw LoadError((root / kMatrixFile).string() + ": " + e.what());
    }
    return dirs;
  }
  if (fs::exists(root / engine::kManifestFile)) dirs.push_back(root);
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / engine::kManifestFile)) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

Json to_json(const ResultTable& table) {
  Json cells = Json::array();
  for (const auto& c : table.cells) {
    Json domains = Json::object();
    for (const auto& [name, d] : c.per_domain) {
      domains[name] = Json{{"n", d.n}, {"correct", d.correct}, {"accuracy", d.accuracy}};
    }
    cells.push_back(Json{{"dataset", c.dataset},
                         {"strategy", to_string(c.strategy)},
                         {"n", c.n},
                         {"correct", c.correct},
                         {"accuracy", c.accuracy},
                         {"per_domain", domains},
                         {"gain_vs_best_baseline", c.gain_vs_best_baseline
                                                       ? Json(*c.gain_vs_best_baseline)
                                                       : Json(nullptr)},
                         {"incomplete", c.incomplete},
                         {"run_errors", c.run_errors}});
  }
  return Json{{"datasets", table.datasets},
              {"config_hashes", table.meta.config_hashes},
              {"seeds", table.meta.seeds},
              {"backend_ids", table.meta.backend_ids},
              {"cells", cells}};
}

std::string render_report(const ResultTable& table) {
  std::ostringstream out;
  out << "# Accuracy by reasoning strategy\n\n";
  out << "Accuracy (%) per dataset. _Underlined_: best baseline; **bold**: best overall; "
         "(±x%): relative gain over the best baseline; —: incomplete.\n\n";
  out << "| Method |";
  for (const auto& ds : table.datasets) out << ' ' << ds << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < table.datasets.size(); ++i) out << "---|";
  out << '\n';

  for (auto kind : table.strategies) {
    out << "| " << display_name(kind) << " |";
    for (const auto& ds : table.datasets) {
      const Cell* c = table.find(ds, kind);
      if (!c || c->incomplete) {
        out << " — |";
        continue;
      }
      std::string v = percent(c->accuracy);
      if (c == table.best_baseline(ds)) v = "_" + v + "_";
      if (c == table.best_overall(ds)) v = "**" + v + "**";
      if (c->gain_vs_best_baseline) v += " (" + signed_gain(*c->gain_vs_best_baseline) + ")";
      out << ' ' << v << " |";
    }
    out << '\n';
  }

  // Per-domain breakdown, one table per dataset.
  for (const auto& ds : table.datasets) {
    std::set<std::string> domains;
    for (const auto& c : table.cells) {
      if (c.dataset != ds) continue;
      for (const auto& [d, _] : c.per_domain) domains.insert(d);
    }
    if (domains.size() < 2) continue;
    out << "\n## " << ds << " by domain\n\n| Method |";
    for (const auto& d : domains) out << ' ' << d << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < domains.size(); ++i) out << "---|";
    out << '\n';
    for (auto kind : table.strategies) {
      const Cell* c = table.find(ds, kind);
      if (!c) continue;
      out << "| " << display_name(kind) << " |";
      for (const auto& d : domains) {
        auto it = c->per_domain.find(d);
        if (c->incomplete || it == c->per_domain.end()) {
          out << " — |";
        } else {
          out << ' ' << percent(it->second.accuracy) << " (" << it->second.n << ") |";
        }
      }
      out << '\n';
    }
  }

  out << "\n## Reproducibility\n\n";
  out << "- config hash: ";
  if (table.meta.config_hashes.empty()) out << "—";
  for (std::size_t i = 0; i < table.meta.config_hashes.size(); ++i) {
    out << (i ? ", " : "") << '`' << table.meta.config_hashes[i] << '`';
  }
  out << "\n- seeds:";
  if (table.meta.seeds.empty()) out << " —";
  for (const auto& [strategy, seed] : table.meta.seeds) out << ' ' << strategy << '=' << seed;
  out << "\n- backends: ";
  if (table.meta.backend_ids.empty()) out << "—";
  for (std::size_t i = 0; i < table.meta.backend_ids.size(); ++i) {
    out << (i ? ", " : "") << '`' << table.meta.backend_ids[i] << '`';
  }
  out << '\n';
  return out.str();
}

void emit_report(const ResultTable& table, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw LoadError("cannot create " + out_dir.string() + ": " + ec.message());
  {
    std::ofstream md(out_dir / "report.md", std::ios::binary | std::ios::trunc);
    md << render_report(table);
    if (!md) throw LoadError("cannot write " + (out_dir / "report.md").string());
  }
  std::ofstream js(out_dir / "results.json", std::ios::binary | std::ios::trunc);
  js << to_json(table).dump(2) << '\n';
  if (!js) throw LoadError("cannot write " + (out_dir / "results.json").string());
}

}  // namespace raisekit::bench

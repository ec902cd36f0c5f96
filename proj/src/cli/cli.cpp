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

#include "raisekit/cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>

#include "raisekit/bench/dataset.hpp"
#include "raisekit/bench/results.hpp"
#include "raisekit/config/config.hpp"
#include "raisekit/core/errors.hpp"
#include "raisekit/core/records.hpp"
#include "raisekit/engine/reasoning_engine.hpp"
#include "raisekit/engine/run_store.hpp"
#include "raisekit/judge/judge.hpp"
#include "raisekit/llm/gateway.hpp"
#include "raisekit/llm/http_backend.hpp"
#include "raisekit/llm/mock_backends.hpp"
#include "raisekit/llm/replay_cache.hpp"
#include "raisekit/prompt/prompt_kit.hpp"
#include "raisekit/retrieval/chunker.hpp"
#include "raisekit/retrieval/embedder.hpp"
#include "raisekit/retrieval/index_io.hpp"
#include "raisekit/retrieval/vector_index.hpp"

namespace raisekit::cli {

namespace fs = std::filesystem;

namespace {

// Options shared by every subcommand.
struct Common {
  std::string config_file;
  std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_file, "key-value config file");
  cmd->add_option("--set", c.overrides, "override a config key (key=value), repeatable");
}

config::Config load_config(const Common& c) {
  config::Config cfg = c.config_file.empty() ? config::Config() : config::Config::load(c.config_file);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

std::unique_ptr<retrieval::Embedder> make_embedder(const config::Config& cfg) {
  const auto dim = static_cast<std::size_t>(cfg.get_int("embed.dim"));
  if (dim == 0) throw UsageError("embed.dim must be positive");
  const auto& kind = cfg.get("embed.kind");
  if (kind == "hash" || kind == "mock") {
    return std::make_unique<retrieval::HashEmbedder>(
        dim, static_cast<std::uint64_t>(cfg.get_int("mock.seed")));
  }
  if (kind == "http") {
    retrieval::HttpEmbedderOptions o;
    o.url = cfg.get("embed.url");
    o.model = cfg.get("embed.model");
    if (o.url.empty()) throw UsageError("embed.kind=http needs embed.url");
    o.api_key = llm::api_key_from_environment();
    o.dim = dim;
    o.timeout = std::chrono::seconds(cfg.get_int("backend.timeout_s"));
    return std::make_unique<retrieval::HttpEmbedder>(o);
  }
  throw UsageError("unknown embed.kind '" + kind + "' (expected hash or http)");
}

std::shared_ptr<llm::CompletionBackend> make_backend(const config::Config& cfg) {
  const auto& kind = cfg.get("backend.kind");
  const auto& cache_dir = cfg.get("cache.dir");
  const auto& cache_mode = cfg.get("cache.mode");
  if (cache_mode != "record" && cache_mode != "replay") {
    throw UsageError("cache.mode must be record or replay");
  }
  const bool replay = !cache_dir.empty() && cache_mode == "replay";

  std::shared_ptr<llm::CompletionBackend> inner;
  if (!replay) {
    if (kind == "staged-mock" || kind == "mock") {
      llm::StagedMockOptions o;
      o.seed = static_cast<std::uint64_t>(cfg.get_int("mock.seed"));
      inner = std::make_shared<llm::StagedMockBackend>(o);
    } else if (kind == "http") {
      llm::HttpChatOptions o;
      o.url = cfg.get("backend.url");
      o.model = cfg.get("backend.model");
      if (o.url.empty()) throw UsageError("backend.kind=http needs backend.url");
      o.api_key = llm::api_key_from_environment();
      o.timeout = std::chrono::seconds(cfg.get_int("backend.timeout_s"));
      inner = std::make_shared<llm::HttpChatBackend>(o);
    } else {
      throw UsageError("unknown backend.kind '" + kind + "' (expected staged-mock or http)");
    }
  }
  if (cache_dir.empty()) return inner;
  return std::make_shared<llm::CachedBackend>(
      cache_dir, replay ? llm::CacheMode::kReplay : llm::CacheMode::kRecord, inner);
}

std::unique_ptr<llm::Gateway> make_gateway(const config::Config& cfg) {
  llm::GatewayOptions o;
  o.max_retries = cfg.get_int("backend.max_retries");
  o.max_in_flight = cfg.get_int("backend.max_in_flight");
  if (o.max_retries < 0 || o.max_in_flight < 1) {
    throw UsageError("backend.max_retries must be >= 0 and backend.max_in_flight >= 1");
  }
  return std::make_unique<llm::Gateway>(make_backend(cfg), o);
}

prompt::PromptKit load_prompts(const config::Config& cfg) {
  const auto& dir = cfg.get("prompts.dir");
  return dir.empty() ? prompt::PromptKit::load_default() : prompt::PromptKit::load(dir);
}

// ---- corpus-chunk ---------------------------------------------------------

int cmd_corpus_chunk(const fs::path& in, const fs::path& out, std::size_t words,
                     std::ostream& log) {
  if (words == 0) throw UsageError("--words must be positive");
  std::vector<Json> records;
  std::size_t docs = 0;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    const auto id = j.find("id");
    const auto text = j.find("text");
    if (id == j.end() || !id->is_string() || text == j.end() || !text->is_string()) {
      throw LoadError(in.string() + ":" + std::to_string(line) +
                      ": document needs string fields 'id' and 'text'");
    }
    const std::string title = j.value("title", "");
    for (const auto& p : retrieval::chunk(id->get<std::string>(), title, text->get<std::string>(),
                                          words)) {
      records.push_back(Json{{"id", p.id}, {"title", p.title}, {"text", p.text}});
    }
    ++docs;
  });
  write_jsonl(out, records);
  log << "chunked " << docs << " documents into " << records.size() << " passages\n";
  return kExitOk;
}

// ---- index-build ----------------------------------------------------------

std::vector<Passage> read_passages(const fs::path& path) {
  std::vector<Passage> passages;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      passages.push_back(Passage{j.at("id").get<std::string>(), j.value("title", ""),
                                 j.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return passages;
}

int cmd_index_build(const config::Config& cfg, const fs::path& passages_file,
                    const fs::path& out, std::ostream& log) {
  const auto passages = read_passages(passages_file);
  auto embedder = make_embedder(cfg);
  const auto index = retrieval::build_index(passages, *embedder, embedder->dim());
  save_index(index, out);
  log << "indexed " << index.size() << " passages at dim " << index.dim() << " into "
      << out.string() << "\n";
  return kExitOk;
}

// ---- run --------------------------------------------------------------------

struct RunArgs {
  std::string dataset;
  std::string dataset_kind = "gpqa";
  std::string dataset_id;
  std::vector<std::string> strategies{"raise"};
  std::optional<int> k;
  std::optional<double> threshold;
  std::optional<int> max_steps;
  std::optional<int> workers;
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample;
  std::string index;
  std::string out;
};

std::vector<StrategyKind> parse_strategies(const std::vector<std::string>& names) {
  std::vector<StrategyKind> kinds;
  for (const auto& name : names) {
    if (name == "all") {
      kinds.insert(kinds.end(), std::begin(kAllStrategyKinds), std::end(kAllStrategyKinds));
      continue;
    }
    auto kind = parse_strategy_kind(name);
    if (!kind) throw UsageError("unknown strategy '" + name + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

int cmd_run(config::Config cfg, const RunArgs& a, std::ostream& out, std::ostream& log) {
  if (a.k) cfg.set("retrieval.k", std::to_string(*a.k));
  if (a.threshold) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *a.threshold);
    cfg.set("retrieval.threshold", buf);
  }
  if (a.max_steps) cfg.set("engine.max_steps", std::to_string(*a.max_steps));
  if (a.workers) cfg.set("engine.workers", std::to_string(*a.workers));

  const auto kind = bench::parse_dataset_kind(a.dataset_kind);
  if (!kind) throw UsageError("unknown dataset kind '" + a.dataset_kind + "'");
  const auto kinds = parse_strategies(a.strategies);

  bench::Dataset ds = bench::load_dataset(a.dataset, *kind, a.seed, a.dataset_id);
  if (a.sample) ds.questions = bench::sample_subset(ds.questions, *a.sample, a.seed);

  std::vector<StrategySpec> specs;
  bool need_index = false;
  for (auto k : kinds) {
    StrategySpec s;
    s.kind = k;
    s.k = cfg.get_int("retrieval.k");
    s.threshold = cfg.get_double("retrieval.threshold");
    s.max_steps = cfg.get_int("engine.max_steps");
    s.seed = a.seed;
    s.validate();
    specs.push_back(s);
    need_index = need_index || uses_retrieval(k);
  }

  std::optional<retrieval::VectorIndex> index;
  std::unique_ptr<retrieval::Embedder> embedder;
  if (need_index) {
    if (a.index.empty()) throw UsageError("retrieval strategies need --index");
    index = retrieval::load_index(a.index);
    embedder = make_embedder(cfg);
    if (embedder->dim() != index->dim()) {
      throw UsageError("embedder dimension " + std::to_string(embedder->dim()) +
                       " does not match index dimension " + std::to_string(index->dim()));
    }
  }

  auto gateway = make_gateway(cfg);
  const auto prompts = load_prompts(cfg);
  engine::EngineConfig ec;
  ec.decompose_retries = cfg.get_int("engine.decompose_retries");
  ec.max_tokens = cfg.get_int("engine.max_tokens");
  ec.temperature = cfg.get_double("engine.temperature");
  ec.document_budget = static_cast<std::size_t>(cfg.get_int("engine.document_budget"));
  ec.fallback_to_cot = cfg.get_bool("engine.fallback_to_cot");
  ec.workers = cfg.get_int("engine.workers");

  engine::EngineDeps deps;
  deps.gateway = gateway.get();
  deps.prompts = &prompts;
  deps.index = index ? &*index : nullptr;
  deps.embedder = embedder.get();
  const engine::ReasoningEngine engine(deps, ec);

  bench::MatrixOptions mo;
  mo.runs_dir = fs::path(a.out);
  mo.config_hash = cfg.hash();
  mo.backend_id = gateway->backend_id();
  mo.embedder_id = embedder ? embedder->id() : "";
  const auto table = bench::run_matrix(std::span(&ds, 1), specs, engine, mo);
  bench::emit_report(table, a.out);

  for (const auto& c : table.cells) {
    log << to_string(c.strategy) << ": " << c.correct << "/" << c.n << " correct"
        << (c.incomplete ? " (incomplete)" : "") << "\n";
  }
  out << bench::render_report(table);
  return kExitOk;
}

// ---- judge ------------------------------------------------------------------

std::vector<ReasoningTrace> collect_traces(const fs::path& input) {
  if (fs::is_regular_file(input)) return engine::read_traces(input);
  std::vector<ReasoningTrace> traces;
  for (const auto& dir : bench::find_run_dirs(input)) {
    auto more = engine::read_traces(dir / engine::kTracesFile);
    traces.insert(traces.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  }
  return traces;
}

int cmd_judge(const config::Config& cfg, const fs::path& input, const fs::path& out,
              std::ostream& log) {
  const auto traces = collect_traces(input);
  const auto items = judge::collect_items(traces);
  auto gateway = make_gateway(cfg);
  const auto prompts = load_prompts(cfg);
  judge::JudgeOptions o;
  o.workers = cfg.get_int("backend.max_in_flight");
  o.temperature = cfg.get_double("engine.temperature");
  const auto judged = judge::judge_items(items, *gateway, prompts, o);
  judge::write_judgement(out, judged);
  std::size_t unrated = 0;
  for (const auto& j : judged) unrated += j.outcome.rating ? 0 : 1;
  log << "rated " << judged.size() - unrated << " of " << judged.size()
      << " retrieved documents (" << unrated << " unrated)\n";
  return kExitOk;
}

// ---- report -----------------------------------------------------------------

int cmd_report(const std::vector<std::string>& inputs, const fs::path& out, std::ostream& print) {
  std::vector<fs::path> dirs;
  for (const auto& in : inputs) {
    auto found = bench::find_run_dirs(in);
    if (found.empty()) throw LoadError("no run directories under " + in);
    dirs.insert(dirs.end(), found.begin(), found.end());
  }
  const auto table = bench::table_from_runs(dirs);
  bench::emit_report(table, out);
  print << bench::render_report(table);
  return kExitOk;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kUsage: return kExitUsage;
    case ErrorCategory::kData: return kExitData;
    case ErrorCategory::kBackend: return kExitBackend;
  }
  return kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"raise: step-wise retrieval-augmented reasoning toolkit", "raise"};
  app.require_subcommand(1);

  Common common;
  std::string in_path, out_path;
  std::size_t words = retrieval::kPassageWords;
  auto* chunk_cmd = app.add_subcommand("corpus-chunk", "split documents into 100-word passages");
  chunk_cmd->add_option("--in", in_path, "documents JSONL {id, title, text}")->required();
  chunk_cmd->add_option("--out", out_path, "passages JSONL")->required();
  chunk_cmd->add_option("--words", words, "words per passage");

  std::string passages_path;
  std::optional<int> dim;
  std::string embed_backend;
  auto* index_cmd = app.add_subcommand("index-build", "embed passages and write a vector index");
  add_common(index_cmd, common);
  index_cmd->add_option("--passages", passages_path, "passages JSONL")->required();
  index_cmd->add_option("--out", out_path, "index file")->required();
  index_cmd->add_option("--dim", dim, "embedding dimension (embed.dim)");
  index_cmd->add_option("--backend", embed_backend, "embedder: mock | http (embed.kind)");

  RunArgs ra;
  std::string llm_backend, cache_dir, cache_mode;
  auto* run_cmd = app.add_subcommand("run", "run strategies over a dataset");
  add_common(run_cmd, common);
  run_cmd->add_option("--dataset", ra.dataset, "dataset JSONL")->required();
  run_cmd->add_option("--kind", ra.dataset_kind, "gpqa | supergpqa | mmlu | generic");
  run_cmd->add_option("--dataset-id", ra.dataset_id, "column name (default: file stem)");
  run_cmd->add_option("--strategy", ra.strategies, "strategy ids or 'all'")->delimiter(',');
  run_cmd->add_option("--k", ra.k, "passages per query (retrieval.k)");
  run_cmd->add_option("--threshold", ra.threshold,
                      "similarity threshold (retrieval.threshold, default 0.84)");
  run_cmd->add_option("--max-steps", ra.max_steps, "engine.max_steps");
  run_cmd->add_option("--workers", ra.workers, "engine.workers");
  run_cmd->add_option("--seed", ra.seed, "run seed (choice shuffling, sampling)");
  run_cmd->add_option("--sample", ra.sample, "evaluate a seeded subset of this size");
  run_cmd->add_option("--index", ra.index, "vector index for retrieval strategies");
  run_cmd->add_option("--backend", llm_backend, "staged-mock | http (backend.kind)");
  run_cmd->add_option("--cache-dir", cache_dir, "record/replay cache directory (cache.dir)");
  run_cmd->add_option("--cache-mode", cache_mode, "record | replay (cache.mode)");
  run_cmd->add_option("--out", ra.out, "run output directory")->required();

  std::string traces_path;
  auto* judge_cmd = app.add_subcommand("judge", "rate the logical relevance of retrievals");
  add_common(judge_cmd, common);
  judge_cmd->add_option("--traces", traces_path, "run directory or traces.jsonl")->required();
  judge_cmd->add_option("--out", out_path, "output directory")->required();
  judge_cmd->add_option("--backend", llm_backend, "staged-mock | http (backend.kind)");
  judge_cmd->add_option("--cache-dir", cache_dir, "cache.dir");
  judge_cmd->add_option("--cache-mode", cache_mode, "cache.mode");

  std::vector<std::string> report_inputs;
  auto* report_cmd = app.add_subcommand("report", "render tables from stored runs");
  report_cmd->add_option("--runs", report_inputs, "run directories")->required();
  report_cmd->add_option("--out", out_path, "output directory")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*chunk_cmd) return cmd_corpus_chunk(in_path, out_path, words, err);
    if (*report_cmd) return cmd_report(report_inputs, out_path, out);

    config::Config cfg = load_config(common);
    if (!llm_backend.empty()) cfg.set("backend.kind", llm_backend);
    if (!cache_dir.empty()) cfg.set("cache.dir", cache_dir);
    if (!cache_mode.empty()) cfg.set("cache.mode", cache_mode);
    if (*index_cmd) {
      if (dim) cfg.set("embed.dim", std::to_string(*dim));
      if (!embed_backend.empty()) cfg.set("embed.kind", embed_backend);
      return cmd_index_build(cfg, passages_path, out_path, err);
    }
    if (*run_cmd) return cmd_run(cfg, ra, out, err);
    if (*judge_cmd) return cmd_judge(cfg, traces_path, out_path, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace raisekit::cli

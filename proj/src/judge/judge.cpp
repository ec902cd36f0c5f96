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

#include "raisekit/judge/judge.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#include "raisekit/core/errors.hpp"

namespace raisekit::judge {

namespace {

constexpr std::string_view kRatingKey = "helpfulness rating";
constexpr std::string_view kExplanationKey = "explanation";

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_markup(char c) {
  return c == ' ' || c == '\t' || c == '*' || c == '_' || c == '#' || c == '`' || c == '"' ||
         c == '\'' || c == '>' || c == '-' || c == '[' || c == '(';
}

// Skips leading markup, matches `key` case-insensitively, skips markup and a
// colon, and returns the remainder of the line.
std::optional<std::string_view> field_value(std::string_view line, std::string_view key) {
  std::size_t i = 0;
  while (i < line.size() && is_markup(line[i])) ++i;
  if (line.size() - i < key.size() || lower(line.substr(i, key.size())) != key) {
    return std::nullopt;
  }
  i += key.size();
  while (i < line.size() && (line[i] == '*' || line[i] == '_' || line[i] == ' ')) ++i;
  if (i >= line.size() || line[i] != ':') return std::nullopt;
  return line.substr(i + 1);
}

// Lowercase letters and digits only, words separated by single spaces.
std::string normalize_label(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(std::tolower(u));
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::optional<int> label_level(const std::string& label) {
  // Ordered so that "not relevant" is tested before anything shorter.
  static const std::vector<std::pair<std::string_view, int>> kPrefixes = {
      {"no relevance", kNotRelevant}, {"not relevant", kNotRelevant},
      {"not at all relevant", kNotRelevant}, {"irrelevant", kNotRelevant},
      {"superficial", kSuperficial}, {"partial", kPartial},
      {"full", kFull},
  };
  for (const auto& [prefix, level] : kPrefixes) {
    if (label.rfind(prefix, 0) == 0) return level;
  }
  // A bare rubric number, e.g. "3" or "3 partially relevant".
  if (!label.empty() && label[0] >= '1' && label[0] <= '4' &&
      (label.size() == 1 || label[1] == ' ')) {
    return label[0] - '0';
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

std::string format_fraction(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string_view level_name(int level) {
  switch (level) {
    case kNotRelevant: return "not_relevant";
    case kSuperficial: return "superficial";
    case kPartial: return "partial";
    case kFull: return "full";
    default: throw InvariantError("relevance level " + std::to_string(level) + " out of range");
  }
}

RelevanceRating parse_rating(std::string_view text) {
  std::optional<int> level;
  std::string explanation;
  for (auto line : split_lines(text)) {
    if (!level) {
      if (auto value = field_value(line, kRatingKey)) {
        const std::string label = normalize_label(*value);
        level = label_level(label);
        if (!level) throw JudgeParseError("unrecognised helpfulness rating '" + label + "'");
        continue;
      }
    }
    if (explanation.empty()) {
      if (auto value = field_value(line, kExplanationKey)) explanation = std::string(trim(*value));
    }
  }
  if (!level) throw JudgeParseError("no 'Helpfulness Rating:' line in judge output");
  return RelevanceRating{*level, std::move(explanation)};
}

RateOutcome rate(const std::string& question, const std::string& subquestion,
                 const std::string& document, llm::Gateway& gateway,
                 const prompt::PromptKit& kit, const JudgeOptions& options) {
  if (question.empty() || subquestion.empty() || document.empty()) {
    throw UsageError("judge needs a non-empty question, subquestion and document");
  }
  llm::CompletionRequest req;
  req.prompt = kit.render(prompt::Stage::kJudge,
                          {{"question", question}, {"subquestion", subquestion},
                           {"document", document}});
  req.max_tokens = options.max_tokens;
  req.temperature = options.temperature;
  req.tag = std::string(prompt::stage_id(prompt::Stage::kJudge));

  RateOutcome outcome;
  for (int attempt = 0; attempt <= options.reasks; ++attempt) {
    ++outcome.calls;
    outcome.raw_text = gateway.complete(req).text;
    try {
      outcome.rating = parse_rating(outcome.raw_text);
      return outcome;
    } catch (const JudgeParseError&) {
      // fall through and re-ask
    }
  }
  return outcome;
}

Distribution distribution(std::span<const std::optional<RelevanceRating>> ratings) {
  std::vector<int> levels;
  std::size_t unrated = 0;
  for (const auto& r : ratings) {
    if (r) {
      levels.push_back(r->level);
    } else {
      ++unrated;
    }
  }
  if (levels.empty()) throw ScoringError("no rated items to aggregate");
  Distribution d = distribution(levels);
  d.unrated = unrated;
  return d;
}

Distribution distribution(std::span<const int> levels) {
  if (levels.empty()) throw ScoringError("no rated items to aggregate");
  std::array<std::size_t, kLevels> counts{};
  for (int level : levels) {
    if (level < 1 || level > kLevels) {
      throw InvariantError("relevance level " + std::to_string(level) + " out of range");
    }
    ++counts[static_cast<std::size_t>(level - 1)];
  }
  Distribution d;
  d.rated = levels.size();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    d.fractions[i] = static_cast<double>(counts[i]) / static_cast<double>(d.rated);
  }
  return d;
}

std::vector<JudgeItem> collect_items(std::span<const ReasoningTrace> traces) {
  std::vector<JudgeItem> items;
  auto add_step = [&](const ReasoningTrace& t, const StepRecord& step) {
    for (const auto& hit : step.retrieved) {
      const ScoredPassage one[] = {hit};
      items.push_back(JudgeItem{t.question_id, t.strategy.kind, step.index, hit.passage.id,
                                t.question_stem, step.subquestion,
                                prompt::render_documents(one)});
    }
  };
  for (const auto& t : traces) {
    for (const auto& step : t.steps) add_step(t, step);
    if (t.direct) add_step(t, *t.direct);
  }
  return items;
}

std::vector<JudgedItem> judge_items(std::span<const JudgeItem> items, llm::Gateway& gateway,
                                    const prompt::PromptKit& kit, const JudgeOptions& options) {
  if (options.workers < 1) throw UsageError("judge workers must be >= 1");
  std::vector<JudgedItem> out(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        const auto& it = items[i];
        out[i] = JudgedItem{it, rate(it.question, it.subquestion, it.document, gateway, kit,
                                     options)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(items.size(), static_cast<std::size_t>(options.workers));
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<StrategySummary> summarize(std::span<const JudgedItem> judged) {
  // Keyed by strategy kind order so output is stable.
  std::map<StrategyKind, std::vector<std::optional<RelevanceRating>>> docs;
  std::map<StrategyKind, std::map<std::tuple<std::string, int>, std::optional<int>>> steps;
  for (const auto& j : judged) {
    const auto kind = j.item.strategy;
    docs[kind].push_back(j.outcome.rating);
    auto& best = steps[kind][{j.item.question_id, j.item.step_index}];
    if (j.outcome.rating && (!best || j.outcome.rating->level > *best)) {
      best = j.outcome.rating->level;
    }
  }
  std::vector<StrategySummary> out;
  for (const auto& [kind, ratings] : docs) {
    StrategySummary s;
    s.strategy = kind;
    s.documents = ratings.size();
    if (std::any_of(ratings.begin(), ratings.end(), [](const auto& r) { return r.has_value(); })) {
      s.per_document = distribution(ratings);
    }
    std::vector<int> step_levels;
    std::size_t unrated_steps = 0;
    for (const auto& [key, level] : steps[kind]) {
      if (level) {
        step_levels.push_back(*level);
      } else {
        ++unrated_steps;
      }
    }
    s.steps = step_levels.size() + unrated_steps;
    if (!step_levels.empty()) {
      s.per_step = distribution(step_levels);
      s.per_step->unrated = unrated_steps;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Json to_json(const JudgedItem& j) {
  Json rating = nullptr;
  if (j.outcome.rating) {
    rating = Json{{"level", j.outcome.rating->level},
                  {"label", level_name(j.outcome.rating->level)},
                  {"explanation", j.outcome.rating->explanation}};
  }
  return Json{{"question_id", j.item.question_id},
              {"strategy", to_string(j.item.strategy)},
              {"step_index", j.item.step_index},
              {"passage_id", j.item.passage_id},
              {"question", j.item.question},
              {"subquestion", j.item.subquestion},
              {"document", j.item.document},
              {"rating", rating},
              {"calls", j.outcome.calls},
              {"raw_text", j.outcome.raw_text}};
}

JudgedItem judged_item_from_json(const Json& j) {
  try {
    JudgedItem out;
    out.item.question_id = j.at("question_id").get<std::string>();
    const auto kind = parse_strategy_kind(j.at("strategy").get<std::string>());
    if (!kind) throw LoadError("unknown strategy in rating record");
    out.item.strategy = *kind;
    out.item.step_index = j.at("step_index").get<int>();
    out.item.passage_id = j.at("passage_id").get<std::string>();
    out.item.question = j.value("question", "");
    out.item.subquestion = j.value("subquestion", "");
    out.item.document = j.value("document", "");
    if (const auto& r = j.at("rating"); !r.is_null()) {
      const int level = r.at("level").get<int>();
      level_name(level);  // range check
      out.outcome.rating = RelevanceRating{level, r.value("explanation", "")};
    }
    out.outcome.calls = j.value("calls", 0);
    out.outcome.raw_text = j.value("raw_text", "");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed rating record: ") + e.what());
  }
}

namespace {

Json distribution_json(const std::optional<Distribution>& d) {
  if (!d) return nullptr;
  Json fractions = Json::object();
  for (int level = 1; level <= kLevels; ++level) {
    fractions[std::string(level_name(level))] = d->fraction(level);
  }
  return Json{{"fractions", fractions}, {"rated", d->rated}, {"unrated", d->unrated}};
}

}  // namespace

Json to_json(const StrategySummary& s) {
  return Json{{"strategy", to_string(s.strategy)},
              {"documents", s.documents},
              {"steps", s.steps},
              {"per_document", distribution_json(s.per_document)},
              {"per_step", distribution_json(s.per_step)}};
}

void write_judgement(const std::filesystem::path& dir, std::span<const JudgedItem> judged) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw LoadError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<Json> records;
  records.reserve(judged.size());
  for (const auto& j : judged) records.push_back(to_json(j));
  write_jsonl(dir / "ratings.jsonl", records);

  const auto summaries = summarize(judged);
  Json summary = Json::array();
  for (const auto& s : summaries) summary.push_back(to_json(s));
  {
    std::ofstream out(dir / "summary.json", std::ios::binary | std::ios::trunc);
    out << summary.dump(2) << '\n';
    if (!out) throw LoadError("cannot write " + (dir / "summary.json").string());
  }

  std::ofstream md(dir / "summary.md", std::ios::binary | std::ios::trunc);
  md << "# Logical relevance of retrieved documents\n";
  for (const char* unit : {"document", "step"}) {
    const bool per_doc = std::string_view(unit) == "document";
    md << "\n## Per " << unit << "\n\n"
       << "| Strategy | Not relevant | Superficial | Partial | Full | Rated | Unrated |\n"
       << "|---|---|---|---|---|---|---|\n";
    for (const auto& s : summaries) {
      const auto& d = per_doc ? s.per_document : s.per_step;
      md << "| " << display_name(s.strategy);
      for (int level = 1; level <= kLevels; ++level) {
        md << " | " << (d ? format_fraction(d->fraction(level)) : "—");
      }
      const std::size_t total = per_doc ? s.documents : s.steps;
      const std::size_t rated = d ? d->rated : 0;
      md << " | " << rated << " | " << (total - rated) << " |\n";
    }
  }
  if (!md) throw LoadError("cannot write " + (dir / "summary.md").string());
}

}  // namespace raisekit::judge

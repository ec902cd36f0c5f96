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

#include "raisekit/core/records.hpp"

#include <fstream>

#include "raisekit/core/errors.hpp"

namespace raisekit {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const Json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) +
                      ": invalid JSON (" + e.what() + ")");
    }
    if (!record.is_object()) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) +
                      ": record is not an object");
    }
    try {
      fn(line_no, record);
    } catch (const LoadError&) {
      throw;
    } catch (const std::exception& e) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write " + path.string());
  for (const auto& r : records) out << r.dump() << '\n';
}

namespace {

std::string require_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw LoadError(std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw LoadError(std::string("field '") + key + "' is not a string");
  return it->get<std::string>();
}

Json label_json(const std::optional<Label>& l) {
  return l ? Json(l->str()) : Json(nullptr);
}

std::optional<Label> label_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  const auto s = j.get<std::string>();
  if (s.size() != 1) throw LoadError("invalid label '" + s + "'");
  auto l = Label::from_char(s[0]);
  if (!l) throw LoadError("invalid label '" + s + "'");
  return l;
}

Json opt_string_json(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

}  // namespace

Question question_from_record(const Json& record, std::size_t min_choices,
                              std::size_t max_choices) {
  Question q;
  q.id = require_string(record, "id");
  q.stem = require_string(record, "question");
  auto choices = record.find("choices");
  if (choices == record.end() || !choices->is_array()) {
    throw LoadError("missing array field 'choices'");
  }
  if (choices->size() < min_choices || choices->size() > max_choices) {
    throw LoadError("question " + q.id + " has " + std::to_string(choices->size()) +
                    " choices; expected " +
                    (min_choices == max_choices ? std::to_string(min_choices)
                                                : std::to_string(min_choices) + "-" +
                                                      std::to_string(max_choices)));
  }
  for (std::size_t i = 0; i < choices->size(); ++i) {
    if (!(*choices)[i].is_string()) throw LoadError("choice " + std::to_string(i) + " is not a string");
    q.choices.push_back(Choice{Label::from_index(i), (*choices)[i].get<std::string>()});
  }
  if (auto it = record.find("answer_index"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw LoadError("answer_index is not an integer");
    auto idx = it->get<long long>();
    if (idx < 0 || static_cast<std::size_t>(idx) >= q.choices.size()) {
      throw LoadError("answer_index " + std::to_string(idx) + " out of range");
    }
    q.gold_label = Label::from_index(static_cast<std::size_t>(idx));
  } else if (auto lbl = optional_string(record, "answer_label")) {
    auto l = lbl->size() == 1 ? Label::from_char(*lbl->begin(), q.choices.size())
                              : std::nullopt;
    if (!l) throw LoadError("answer_label '" + *lbl + "' names no choice");
    q.gold_label = l;
  }
  q.domain = optional_string(record, "domain");
  q.dataset = optional_string(record, "dataset").value_or("");
  q.validate(min_choices, max_choices);
  return q;
}

Json question_to_record(const Question& q) {
  Json choices = Json::array();
  for (const auto& c : q.choices) choices.push_back(c.text);
  Json j{{"id", q.id}, {"question", q.stem}, {"choices", choices},
         {"domain", opt_string_json(q.domain)}, {"dataset", q.dataset}};
  if (q.gold_label) j["answer_label"] = q.gold_label->str();
  return j;
}

Json to_json(const StrategySpec& spec) {
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"k", spec.k},
              {"threshold", spec.threshold},
              {"max_steps", spec.max_steps},
              {"seed", spec.seed}};
}

StrategySpec strategy_from_json(const Json& j) {
  StrategySpec spec;
  auto kind = parse_strategy_kind(j.at("kind").get<std::string>());
  if (!kind) throw LoadError("unknown strategy kind " + j.at("kind").dump());
  spec.kind = *kind;
  spec.k = j.at("k").get<int>();
  spec.threshold = j.at("threshold").get<double>();
  spec.max_steps = j.at("max_steps").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

Json to_json(const ScoredPassage& p) {
  return Json{{"id", p.passage.id},
              {"title", p.passage.title},
              {"text", p.passage.text},
              {"score", p.score}};
}

ScoredPassage scored_passage_from_json(const Json& j) {
  return ScoredPassage{Passage{j.at("id").get<std::string>(),
                               j.at("title").get<std::string>(),
                               j.at("text").get<std::string>()},
                       j.at("score").get<double>()};
}

namespace {

Json step_json(const StepRecord& s) {
  Json retrieved = Json::array();
  for (const auto& p : s.retrieved) retrieved.push_back(to_json(p));
  Json query = nullptr;
  if (s.query) {
    query = Json{{"text", s.query->text},
                 {"provenance", std::string(to_string(s.query->provenance))}};
  }
  return Json{{"index", s.index},
              {"subquestion", s.subquestion},
              {"search_query", s.search_query},
              {"query", query},
              {"retrieved", retrieved},
              {"subanswer", s.answer.text},
              {"flags", s.flags}};
}

StepRecord step_from_json(const Json& j) {
  StepRecord s;
  s.index = j.at("index").get<int>();
  s.subquestion = j.at("subquestion").get<std::string>();
  s.search_query = j.at("search_query").get<std::string>();
  if (const auto& q = j.at("query"); !q.is_null()) {
    auto prov = parse_strategy_kind(q.at("provenance").get<std::string>());
    if (!prov) throw LoadError("unknown query provenance");
    s.query = LogicalQuery{s.index, q.at("text").get<std::string>(), *prov};
  }
  for (const auto& p : j.at("retrieved")) s.retrieved.push_back(scored_passage_from_json(p));
  s.answer = SubAnswer{s.index, j.at("subanswer").get<std::string>()};
  s.flags = j.at("flags").get<std::vector<std::string>>();
  return s;
}

}  // namespace

Json to_json(const ReasoningTrace& t, bool include_timings) {
  Json plan = nullptr;
  if (t.plan) {
    plan = Json::array();
    for (const auto& s : t.plan->steps) {
      plan.push_back(Json{{"index", s.index},
                          {"subquestion", s.subquestion},
                          {"search_query", s.search_query}});
    }
  }
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(step_json(s));

  Json j{{"question_id", t.question_id},
         {"dataset", t.dataset},
         {"domain", opt_string_json(t.domain)},
         {"gold_label", label_json(t.gold_label)},
         {"question", t.question_stem},
         {"choices", t.choice_texts},
         {"strategy", to_json(t.strategy)},
         {"plan", plan},
         {"steps", steps},
         {"direct", t.direct ? step_json(*t.direct) : Json(nullptr)},
         {"final_text", t.final_text},
         {"final_label", label_json(t.final_label)},
         {"flags", t.flags},
         {"error", opt_string_json(t.error)},
         {"backend_calls", t.backend_calls},
         {"retrieval_calls", t.retrieval_calls}};
  if (include_timings) j["timings_ms"] = t.timings_ms;
  return j;
}

ReasoningTrace trace_from_json(const Json& j) {
  ReasoningTrace t;
  t.question_id = j.at("question_id").get<std::string>();
  t.dataset = j.at("dataset").get<std::string>();
  t.domain = optional_string(j, "domain");
  t.gold_label = label_from(j.at("gold_label"));
  t.question_stem = j.at("question").get<std::string>();
  t.choice_texts = j.at("choices").get<std::vector<std::string>>();
  t.strategy = strategy_from_json(j.at("strategy"));
  if (const auto& plan = j.at("plan"); !plan.is_null()) {
    DecompositionPlan p;
    for (const auto& s : plan) {
      p.steps.push_back(PlanStep{s.at("index").get<int>(),
                                 s.at("subquestion").get<std::string>(),
                                 s.at("search_query").get<std::string>()});
    }
    t.plan = std::move(p);
  }
  for (const auto& s : j.at("steps")) t.steps.push_back(step_from_json(s));
  if (const auto& d = j.at("direct"); !d.is_null()) t.direct = step_from_json(d);
  t.final_text = j.at("final_text").get<std::string>();
  t.final_label = label_from(j.at("final_label"));
  t.flags = j.at("flags").get<std::vector<std::string>>();
  t.error = optional_string(j, "error");
  t.backend_calls = j.at("backend_calls").get<int>();
  t.retrieval_calls = j.at("retrieval_calls").get<int>();
  if (auto it = j.find("timings_ms"); it != j.end()) {
    t.timings_ms = it->get<std::map<std::string, double>>();
  }
  return t;
}

}  // namespace raisekit

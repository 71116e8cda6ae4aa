// Copyright 2026 The symdrift Authors
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

#include "symdrift/problem.h"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "symdrift/csp.h"
#include "symdrift/error.h"
#include "symdrift/fol.h"

namespace symdrift {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view TaskKindName(TaskKind kind) {
  switch (kind) {
    case TaskKind::kOpenWorld: return "open-world";
    case TaskKind::kClosedWorld: return "closed-world";
    case TaskKind::kCsp: return "csp";
  }
  return "open-world";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "open-world") return TaskKind::kOpenWorld;
  if (name == "closed-world") return TaskKind::kClosedWorld;
  if (name == "csp") return TaskKind::kCsp;
  throw Error(ErrorCode::kInvalidArgument, "unknown task kind '" + std::string(name) + "'");
}

Sentence MakeSentence(std::string text, const text::PosHints* hints) {
  Sentence s;
  s.tokens = text::Tokenize(text, hints);
  s.text = std::move(text);
  return s;
}

std::string_view Problem::SpanText(const Span& s) const {
  const std::string& t = unit(s.unit).text;
  if (s.begin > s.end || s.end > t.size()) return {};
  return std::string_view(t).substr(s.begin, s.end - s.begin);
}

std::string Problem::Text() const {
  std::string out;
  for (const Sentence& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  out += "\nQuestion: " + question.text;
  for (std::size_t i = 0; i < options.size(); ++i) {
    out += "\n" + OptionLetter(i) + ") " + options[i];
  }
  return out;
}

std::string OptionLetter(std::size_t index) { return std::string(1, static_cast<char>('A' + index)); }

std::optional<std::size_t> OptionIndex(std::string_view letter) {
  if (letter.size() != 1 || letter[0] < 'A' || letter[0] > 'Z') return std::nullopt;
  return static_cast<std::size_t>(letter[0] - 'A');
}

void ValidateProblem(const Problem& p) {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kFormatError, "problem '" + p.id + "': " + msg);
  };
  if (p.id.empty()) fail("empty id");
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    std::size_t last = 0;
    for (const text::Token& t : p.unit(u).tokens) {
      if (t.begin < last || t.end < t.begin || t.end > p.unit(u).text.size()) {
        fail("token spans out of order in unit " + std::to_string(u));
      }
      last = t.end;
    }
  }
  for (const auto& [span, concept_id] : p.gold_concepts) {
    if (span.unit >= p.unit_count() || span.end > p.unit(span.unit).text.size() ||
        span.begin >= span.end) {
      fail("gold concept span out of range");
    }
  }
  if (p.task_kind == TaskKind::kCsp) {
    const auto index = OptionIndex(p.answer);
    if (!index || *index >= p.options.size()) fail("answer '" + p.answer + "' is not an option");
  } else if (p.answer != "True" && p.answer != "False" &&
             !(p.answer == "Unknown" && p.task_kind == TaskKind::kOpenWorld)) {
    fail("answer '" + p.answer + "' does not match task kind");
  }
}

namespace {

ordered_json SpanJson(const Span& s) {
  return ordered_json{{"unit", s.unit}, {"begin", s.begin}, {"end", s.end}};
}

Span SpanFrom(const json& j) {
  return Span{j.at("unit").get<std::size_t>(), j.at("begin").get<std::size_t>(),
              j.at("end").get<std::size_t>()};
}

}  // namespace

std::string ProblemToJson(const Problem& p) {
  ordered_json j;
  j["id"] = p.id;
  j["task_kind"] = TaskKindName(p.task_kind);
  j["sentences"] = ordered_json::array();
  for (const Sentence& s : p.sentences) j["sentences"].push_back(s.text);
  j["question"] = p.question.text;
  j["options"] = p.options;
  j["answer"] = p.answer;
  if (p.gold_logic) j["gold_logic"] = *p.gold_logic;
  if (!p.gold_concepts.empty()) {
    ordered_json concepts = ordered_json::array();
    for (const auto& [span, id] : p.gold_concepts) {
      ordered_json c = SpanJson(span);
      c["concept"] = id;
      concepts.push_back(std::move(c));
    }
    j["gold_concepts"] = std::move(concepts);
  }
  if (!p.base_id.empty()) j["base_id"] = p.base_id;
  if (!p.provenance.empty()) {
    ordered_json prov = ordered_json::object();
    for (const auto& [id, entries] : p.provenance) {
      ordered_json list = ordered_json::array();
      for (const ProvenanceEntry& e : entries) {
        ordered_json item = SpanJson(e.span);
        item["surface"] = e.surface;
        item["source"] = SpanJson(e.source);
        list.push_back(std::move(item));
      }
      prov[id] = std::move(list);
    }
    j["provenance"] = std::move(prov);
  }
  return j.dump();
}

Problem ProblemFromJson(std::string_view json_line, std::size_t line, const text::PosHints* hints) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::exception& e) {
    throw FormatError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError(line, "expected a JSON object");
  for (const char* field : {"id", "sentences", "question", "answer"}) {
    if (!j.contains(field)) throw FormatError(line, std::string("missing field '") + field + "'");
  }
  Problem p;
  try {
    p.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
    p.task_kind = ParseTaskKind(j.value("task_kind", std::string("open-world")));
    for (const json& s : j.at("sentences")) p.sentences.push_back(MakeSentence(s.get<std::string>(), hints));
    p.question = MakeSentence(j.at("question").get<std::string>(), hints);
    if (j.contains("options")) p.options = j.at("options").get<std::vector<std::string>>();
    const json& answer = j.at("answer");
    if (answer.is_boolean()) {
      p.answer = answer.get<bool>() ? "True" : "False";
    } else if (answer.is_number_unsigned()) {
      p.answer = OptionLetter(answer.get<std::size_t>());
    } else {
      p.answer = answer.get<std::string>();
    }
    if (j.contains("gold_logic") && !j.at("gold_logic").is_null()) {
      p.gold_logic = j.at("gold_logic").get<std::string>();
    }
    if (j.contains("gold_concepts")) {
      for (const json& c : j.at("gold_concepts")) {
        p.gold_concepts.emplace(SpanFrom(c), c.at("concept").get<std::string>());
      }
    }
    p.base_id = j.value("base_id", std::string());
    if (j.contains("provenance")) {
      for (const auto& [id, entries] : j.at("provenance").items()) {
        for (const json& e : entries) {
          p.provenance[id].push_back(
              ProvenanceEntry{SpanFrom(e), e.at("surface").get<std::string>(), SpanFrom(e.at("source"))});
        }
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(line, std::string("bad field: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(line, e.what());
  }

  try {
    ValidateProblem(p);
    if (p.gold_logic) {
      if (p.task_kind == TaskKind::kCsp) {
        solver::ParseCspProblem(*p.gold_logic);
      } else {
        fol::ValidateProgram(fol::ParseProgram(*p.gold_logic));
      }
    }
  } catch (const Error& e) {
    throw FormatError(line, e.what());
  }
  return p;
}

std::vector<Problem> LoadDataset(const std::filesystem::path& path, const text::PosHints* hints) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read dataset " + path.string());
  std::vector<Problem> problems;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    problems.push_back(ProblemFromJson(line, line_no, hints));
  }
  return problems;
}

void SaveDataset(const std::filesystem::path& path, const std::vector<Problem>& problems) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const Problem& p : problems) out << ProblemToJson(p) << '\n';
}

}  // namespace symdrift

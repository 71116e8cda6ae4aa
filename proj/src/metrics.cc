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

#include "symdrift/metrics.h"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>

#include "symdrift/error.h"
#include "symdrift/text.h"

namespace symdrift::metrics {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array kClasses = {ErrorClass::kCorrect, ErrorClass::kParseError, ErrorClass::kExecError,
                                 ErrorClass::kLogicError};

solver::Outcome ParseOutcome(std::string_view name) {
  for (auto o : {solver::Outcome::kProved, solver::Outcome::kDisproved, solver::Outcome::kUnknown,
                 solver::Outcome::kTrue, solver::Outcome::kFalse, solver::Outcome::kOption}) {
    if (solver::OutcomeName(o) == name) return o;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown outcome '" + std::string(name) + "'");
}

template <typename T>
void PutOptional(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

std::optional<std::string> GetOptional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

// The symbol label "A & B" stands for the atoms A and B.
std::vector<std::string> LabelParts(const std::string& label) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t amp = label.find(" & ", start);
    parts.push_back(label.substr(start, amp == std::string::npos ? std::string::npos : amp - start));
    if (amp == std::string::npos) break;
    start = amp + 3;
  }
  return parts;
}

}  // namespace

std::string_view ErrorClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kCorrect:
      return "Correct";
    case ErrorClass::kParseError:
      return "ParseError";
    case ErrorClass::kExecError:
      return "ExecError";
    case ErrorClass::kLogicError:
      return "LogicError";
  }
  return "?";
}

ErrorClass ParseErrorClass(std::string_view name) {
  for (ErrorClass c : kClasses) {
    if (ErrorClassName(c) == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown error class '" + std::string(name) + "'");
}

std::string RecordToJson(const TranslationRecord& r) {
  ordered_json j;
  j["problem_id"] = r.problem_id;
  j["task_kind"] = TaskKindName(r.task_kind);
  j["raw_output"] = r.raw_output;
  PutOptional(j, "program", r.program);
  PutOptional(j, "parse_error", r.parse_error);
  if (r.verdict) {
    j["verdict"] = ordered_json{{"outcome", solver::OutcomeName(r.verdict->value)},
                                {"option", r.verdict->option},
                                {"steps", r.verdict->steps},
                                {"limit_hit", r.verdict->limit_hit}};
  } else {
    j["verdict"] = nullptr;
  }
  PutOptional(j, "exec_error", r.exec_error);
  PutOptional(j, "predicted", r.predicted);
  j["gold"] = r.gold;
  j["error_class"] = ErrorClassName(ClassifyError(r));
  ordered_json align = ordered_json::object();
  for (const auto& [concept_id, symbols] : r.alignment) align[concept_id] = symbols;
  j["alignment"] = align;
  j["alignment_gaps"] = r.alignment_gaps;
  j["tokens_in"] = r.tokens_in;
  j["tokens_out"] = r.tokens_out;
  return j.dump();
}

TranslationRecord RecordFromJson(std::string_view text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(line, std::string("invalid JSON: ") + e.what());
  }
  try {
    TranslationRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.task_kind = ParseTaskKind(j.at("task_kind").get<std::string>());
    r.raw_output = j.value("raw_output", "");
    r.program = GetOptional(j, "program");
    r.parse_error = GetOptional(j, "parse_error");
    if (j.contains("verdict") && !j.at("verdict").is_null()) {
      const json& v = j.at("verdict");
      r.verdict = solver::Verdict{ParseOutcome(v.at("outcome").get<std::string>()),
                                  v.value("option", std::size_t{0}), v.value("steps", std::size_t{0}),
                                  v.value("limit_hit", false)};
    }
    r.exec_error = GetOptional(j, "exec_error");
    r.predicted = GetOptional(j, "predicted");
    r.gold = j.at("gold").get<std::string>();
    if (j.contains("alignment")) {
      for (const auto& [k, v] : j.at("alignment").items()) r.alignment[k] = v.get<std::set<std::string>>();
    }
    if (j.contains("alignment_gaps")) r.alignment_gaps = j.at("alignment_gaps").get<std::vector<std::string>>();
    r.tokens_in = j.value("tokens_in", std::size_t{0});
    r.tokens_out = j.value("tokens_out", std::size_t{0});
    return r;
  } catch (const json::exception& e) {
    throw FormatError(line, std::string("bad record: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(line, e.what());
  }
}

AlignmentResult AlignSymbols(const tr::Translation& t, const Problem& p) {
  if (!t.program || t.program->empty()) {
    throw Error(ErrorCode::kAlignmentIncomplete, "no program to align for " + p.id);
  }
  std::set<std::string> predicates;
  if (p.task_kind != TaskKind::kCsp) {
    fol::LogicProgram program = fol::ParseProgram(*t.program);
    for (fol::SymbolId id : program.registry.Symbols(fol::SymbolKind::kPredicate)) {
      predicates.insert(program.registry.Name(id));
    }
    if (predicates.empty() && !p.gold_concepts.empty()) {
      throw Error(ErrorCode::kAlignmentIncomplete, "program of " + p.id + " has no predicates");
    }
  }
  AlignmentResult out;
  for (const auto& [span, concept_id] : p.gold_concepts) {
    std::set<std::string>& symbols = out.alignment[concept_id];
    bool found = false;
    for (const tr::SymbolUse& use : t.uses) {
      if (!use.span.Overlaps(span)) continue;
      std::vector<std::string> parts = LabelParts(use.symbol);
      bool present = std::all_of(parts.begin(), parts.end(),
                                 [&](const std::string& s) { return predicates.count(s) != 0; });
      if (!present) continue;
      symbols.insert(use.symbol);
      found = true;
    }
    if (!found) out.gaps.push_back(concept_id + ": " + std::string(p.SpanText(span)));
  }
  return out;
}

SdsReport ComputeSds(const std::vector<TranslationRecord>& records) {
  SdsReport report;
  double total = 0;
  for (const TranslationRecord& r : records) {
    if (r.alignment.empty()) continue;
    double local = 0;
    for (const auto& [concept_id, symbols] : r.alignment) {
      ++report.concepts;
      if (symbols.empty()) {
        ++report.dropped;
        continue;
      }
      local += static_cast<double>(symbols.size() - 1);
    }
    total += local;
    report.per_problem[r.problem_id] = local / static_cast<double>(r.alignment.size());
  }
  if (report.concepts == 0) throw Error(ErrorCode::kEmptyConceptSet, "no aligned concepts in the records");
  report.value = total / static_cast<double>(report.concepts);
  return report;
}

ErrorClass ClassifyError(const TranslationRecord& r) {
  if (r.parse_error || !r.program) return ErrorClass::kParseError;
  if (r.exec_error || !r.predicted) return ErrorClass::kExecError;
  if (*r.predicted != r.gold) return ErrorClass::kLogicError;
  return ErrorClass::kCorrect;
}

double Accuracy(const std::vector<TranslationRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyDataset, "accuracy of an empty run");
  std::size_t correct = 0;
  for (const TranslationRecord& r : records) correct += ClassifyError(r) == ErrorClass::kCorrect;
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

std::map<ErrorClass, std::size_t> Histogram(const std::vector<TranslationRecord>& records) {
  std::map<ErrorClass, std::size_t> h;
  for (ErrorClass c : kClasses) h[c] = 0;
  for (const TranslationRecord& r : records) ++h[ClassifyError(r)];
  return h;
}

bool Consistent(const TranslationRecord& r) {
  return std::all_of(r.alignment.begin(), r.alignment.end(),
                     [](const auto& kv) { return kv.second.size() <= 1; });
}

Attribution AttributeErrors(const std::vector<TranslationRecord>& before,
                            const std::vector<TranslationRecord>& after) {
  auto index = [](const std::vector<TranslationRecord>& rs, const char* which) {
    std::map<std::string, const TranslationRecord*> m;
    for (const TranslationRecord& r : rs) {
      if (!m.emplace(r.problem_id, &r).second) {
        throw Error(ErrorCode::kPairingMismatch, std::string("duplicate id in ") + which + " run: " + r.problem_id);
      }
    }
    return m;
  };
  auto b = index(before, "before");
  auto a = index(after, "after");
  if (b.size() != a.size()) throw Error(ErrorCode::kPairingMismatch, "runs cover different problem counts");

  Attribution out;
  for (std::string_view c :
       {kCorrectedConsistency, kCorrectedOther, kRemainingOther, kRemainingInconsistent, kNewlyIntroduced}) {
    out.counts[std::string(c)] = 0;
  }
  for (const auto& [id, rb] : b) {
    auto it = a.find(id);
    if (it == a.end()) throw Error(ErrorCode::kPairingMismatch, "problem " + id + " missing from after run");
    const TranslationRecord& ra = *it->second;
    bool ok_before = ClassifyError(*rb) == ErrorClass::kCorrect;
    bool ok_after = ClassifyError(ra) == ErrorClass::kCorrect;
    std::string_view category;
    if (ok_before && ok_after) continue;
    if (ok_before) {
      category = kNewlyIntroduced;
    } else if (ok_after) {
      category = !Consistent(*rb) && Consistent(ra) ? kCorrectedConsistency : kCorrectedOther;
    } else {
      category = Consistent(ra) ? kRemainingOther : kRemainingInconsistent;
    }
    ++out.counts[std::string(category)];
    out.category_of[id] = std::string(category);
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepPoint>& curve) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << "level_percent,accuracy,sds\n";
  for (const SweepPoint& s : curve) out << s.level_percent << ',' << s.accuracy << ',' << s.sds << '\n';
  return out.str();
}

}  // namespace symdrift::metrics

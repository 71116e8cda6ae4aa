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

// Scoring of translation runs: symbol dispersion, accuracy, the three-way
// error taxonomy and before/after error attribution.

#ifndef SYMDRIFT_METRICS_H_
#define SYMDRIFT_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symdrift/problem.h"
#include "symdrift/solver.h"
#include "symdrift/translate.h"

namespace symdrift::metrics {

enum class ErrorClass { kCorrect, kParseError, kExecError, kLogicError };

std::string_view ErrorClassName(ErrorClass c);
ErrorClass ParseErrorClass(std::string_view name);

// concept id -> symbols its occurrences were translated to
using Alignment = std::map<std::string, std::set<std::string>>;

struct TranslationRecord {
  std::string problem_id;
  TaskKind task_kind = TaskKind::kOpenWorld;
  std::string raw_output;
  std::optional<std::string> program;
  std::optional<std::string> parse_error;
  std::optional<solver::Verdict> verdict;
  std::optional<std::string> exec_error;
  std::optional<std::string> predicted;
  std::string gold;
  Alignment alignment;
  std::vector<std::string> alignment_gaps;  // "concept: surface" with no symbol found
  std::size_t tokens_in = 0;
  std::size_t tokens_out = 0;
};

std::string RecordToJson(const TranslationRecord& r);
TranslationRecord RecordFromJson(std::string_view json, std::size_t line = 0);

struct AlignmentResult {
  Alignment alignment;
  std::vector<std::string> gaps;
};

// Provenance alignment: each gold concept span of `p` collects the symbols of
// the translation's uses overlapping it, provided those symbols occur in the
// program. Gaps are returned, not thrown. Throws kAlignmentIncomplete when
// the translation has no program or the program has no atoms at all.
AlignmentResult AlignSymbols(const tr::Translation& t, const Problem& p);

struct SdsReport {
  double value = 0;
  std::size_t concepts = 0;  // |V|
  std::size_t dropped = 0;   // concepts with no symbol at all
  std::map<std::string, double> per_problem;
};

// Pools every "problem/concept" pair of the records:
//   SDS = (1/|V|) * sum over v of (|f(v)| - 1),
// with dropped concepts (|f(v)| = 0) scored 0 and counted separately. Throws
// kEmptyConceptSet when no record carries a concept.
SdsReport ComputeSds(const std::vector<TranslationRecord>& records);

// ParseError without a program, ExecError when the solver raised, LogicError
// on a wrong label, otherwise Correct.
ErrorClass ClassifyError(const TranslationRecord& r);

// Share of Correct records. Throws kEmptyDataset on an empty list.
double Accuracy(const std::vector<TranslationRecord>& records);

std::map<ErrorClass, std::size_t> Histogram(const std::vector<TranslationRecord>& records);

// Every concept maps to at most one symbol.
bool Consistent(const TranslationRecord& r);

inline constexpr std::string_view kCorrectedConsistency = "corrected via symbol consistency";
inline constexpr std::string_view kCorrectedOther = "corrected via other";
inline constexpr std::string_view kRemainingOther = "remaining other";
inline constexpr std::string_view kRemainingInconsistent = "remaining without consistency";
inline constexpr std::string_view kNewlyIntroduced = "newly introduced other";

struct Attribution {
  std::map<std::string, std::size_t> counts;  // all five categories, zeros included
  std::map<std::string, std::string> category_of;  // problem id -> category
};

// Pairs records by problem id; throws kPairingMismatch unless both runs cover
// the same ids exactly once.
Attribution AttributeErrors(const std::vector<TranslationRecord>& before,
                            const std::vector<TranslationRecord>& after);

struct SweepPoint {
  std::size_t level_percent = 0;
  double accuracy = 0;
  double sds = 0;
};

std::string SweepCsv(const std::vector<SweepPoint>& curve);

}  // namespace symdrift::metrics

#endif  // SYMDRIFT_METRICS_H_

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

// Run orchestration: configuration, translator and solver selection,
// per-problem evaluation, run persistence, intensity sweeps and SFT export.
//
// A run directory holds
//   config         the configuration snapshot (flat key = value)
//   records.jsonl  one TranslationRecord per problem, dataset order
//   report         human-readable summary
//   report.jsonl   one metrics object
//   traces.jsonl   mental-table traces, when the table is on
//   timing         wall-clock seconds; kept apart so the rest is reproducible

#ifndef SYMDRIFT_HARNESS_H_
#define SYMDRIFT_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdrift/diversify.h"
#include "symdrift/lexicon.h"
#include "symdrift/mental.h"
#include "symdrift/metrics.h"
#include "symdrift/net.h"
#include "symdrift/problem.h"
#include "symdrift/similarity.h"
#include "symdrift/solver.h"
#include "symdrift/translate.h"

namespace symdrift::harness {

enum class SolverChoice { kAuto, kResolution, kEnumerate, kCwa, kCsp, kProver9 };

std::string_view SolverName(SolverChoice s);
SolverChoice ParseSolver(std::string_view name);

// Throws kSolverMismatch unless the solver decides this kind of task:
// resolution, enumerate and prover9 for open world, cwa for closed world,
// csp for ordering puzzles. kAuto always passes.
void CheckSolver(TaskKind kind, SolverChoice solver);
SolverChoice ResolveSolver(TaskKind kind, SolverChoice solver);

struct RunConfig {
  std::string translator = "gold";  // gold | naive | split-adversary | llm
  bool mental = false;
  std::string oracle = "lexicon";     // lexicon | llm
  std::string aligner = "provenance";  // provenance | llm
  SolverChoice solver = SolverChoice::kAuto;
  std::size_t max_steps = solver::kDefaultMaxSteps;
  std::string prover9_path;  // empty: search PATH
  double prover9_timeout = 10;

  bool diversify = false;
  double theta = div::kDefaultTheta;
  std::size_t intensity = 100;  // percent of units eligible for rewriting
  std::string scorer = "fallback";
  std::filesystem::path vectors_path;
  bool rewriter = false;

  tr::LlmConfig llm;  // prompt_dir defaults to DefaultPromptDir()
  std::filesystem::path lexicon_dir;  // empty: bundled lexicon
  std::uint64_t seed = 7;
  std::size_t workers = 1;
  double rate_limit = 0;  // remote requests per second across workers; 0: unlimited
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys and malformed
// values throw kInvalidArgument.
RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfig(const std::filesystem::path& path);
// Canonical snapshot: every key, fixed order; ParseConfig reads it back.
std::string RenderConfig(const RunConfig& config);
// Throws kInvalidArgument on out-of-range values.
void ValidateRunConfig(const RunConfig& config);

// Outcome label in the dataset's vocabulary: True/False/Unknown, or the
// option letter.
std::string LabelOf(const solver::Verdict& verdict);

// One mental-table translation, kept for SFT export.
struct MentalTrace {
  std::string problem_id;
  std::string instruction;  // problem text
  std::string table;        // MentalTable::Render()
  std::vector<mental::TraceStep> steps;
  std::optional<std::string> program;
  bool correct = false;
};

std::string TraceToJson(const MentalTrace& t);
MentalTrace TraceFromJson(std::string_view json, std::size_t line = 0);

struct ProblemResult {
  metrics::TranslationRecord record;
  std::optional<MentalTrace> trace;
};

// Maps concept surfaces to program symbols by asking a chat model. The
// prompt lists every gold concept with its surfaces and the program's
// predicates; the reply holds one "Concept: Sym1, Sym2" line per concept.
class LlmAligner {
 public:
  LlmAligner(std::shared_ptr<net::ChatClient> client, std::filesystem::path prompt_dir);
  // Throws kAlignmentIncomplete without a program; unmapped concepts become
  // gaps. `audit` receives the raw reply.
  metrics::AlignmentResult Align(const Problem& p, const std::string& program, std::string* audit,
                                 net::Usage* usage) const;

 private:
  std::shared_ptr<net::ChatClient> client_;
  std::string template_;
};

// Everything one configuration needs, built once per run and shared by the
// workers. The chat client is used by the llm translator, oracle and
// aligner; when absent and needed, an HTTP client is built from the
// environment.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config, std::shared_ptr<net::ChatClient> client = nullptr);
  ~Pipeline();
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  const RunConfig& config() const { return config_; }
  const lex::Resources& resources() const { return *resources_; }

  // Diversifies when configured; otherwise returns the problem unchanged.
  Problem Prepare(const Problem& p) const;

  // Translates, solves, aligns and classifies one prepared problem. Failures
  // land in the record; only kClientError and kOracleFailure propagate.
  ProblemResult Evaluate(const Problem& p) const;

  // Parses and solves an already translated problem.
  metrics::TranslationRecord Finish(const Problem& p, const tr::Translation& t) const;

 private:
  RunConfig config_;
  std::unique_ptr<net::TokenBucket> limiter_;  // outlives client_, which points at it
  std::shared_ptr<net::ChatClient> client_;
  std::unique_ptr<lex::Resources> owned_resources_;
  const lex::Resources* resources_ = nullptr;
  std::unique_ptr<sim::Scorer> scorer_;
  std::unique_ptr<div::Rewriter> rewriter_;
  std::unique_ptr<tr::Translator> translator_;
  std::unique_ptr<mental::Oracle> oracle_;
  std::unique_ptr<LlmAligner> aligner_;
};

struct RunReport {
  std::string run_id;  // digest of the configuration and dataset
  std::string config;  // RenderConfig snapshot
  std::vector<metrics::TranslationRecord> records;
  double accuracy = 0;
  std::optional<metrics::SdsReport> sds;  // absent when no record has concepts
  std::map<metrics::ErrorClass, std::size_t> histogram;
  std::size_t tokens_in = 0;
  std::size_t tokens_out = 0;
  double wall_clock_s = 0;
  std::vector<MentalTrace> traces;
};

// Throws kEmptyDataset on an empty dataset and kSolverMismatch when a fixed
// solver does not fit a problem's task kind. Records keep dataset order
// whatever the worker count.
RunReport RunEvaluation(const std::vector<Problem>& dataset, const RunConfig& config,
                        std::shared_ptr<net::ChatClient> client = nullptr);

std::string ReportText(const RunReport& report);
std::string ReportJson(const RunReport& report);

void WriteRun(const RunReport& report, const std::filesystem::path& dir);
std::vector<metrics::TranslationRecord> LoadRecords(const std::filesystem::path& path);

// One line {"instruction", "response", "problem_id"} per correct traced
// problem of a run directory; returns the number written. Throws kNoTraces
// when the run holds no traces.
std::size_t ExportSftTraces(const std::filesystem::path& run_dir, const std::filesystem::path& out);

// Evaluates the dataset diversified at each intensity level (percent).
std::vector<metrics::SweepPoint> IntensitySweep(const std::vector<Problem>& dataset, const RunConfig& config,
                                                const std::vector<std::size_t>& levels,
                                                std::shared_ptr<net::ChatClient> client = nullptr);

}  // namespace symdrift::harness

#endif  // SYMDRIFT_HARNESS_H_

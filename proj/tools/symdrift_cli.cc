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

// symdrift command-line tool.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 remote-service error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symdrift/csp.h"
#include "symdrift/error.h"
#include "symdrift/fol.h"
#include "symdrift/harness.h"
#include "symdrift/metrics.h"
#include "symdrift/problem.h"
#include "symdrift/prover9.h"
#include "symdrift/solver.h"
#include "symdrift/synthetic.h"

namespace fs = std::filesystem;
using namespace symdrift;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRemote = 3;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kClientError:
    case ErrorCode::kOracleFailure:
    case ErrorCode::kExternalUnavailable:
    case ErrorCode::kTimeout:
      return kExitRemote;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSolverMismatch:
      return kExitUsage;
    default:
      return kExitData;
  }
}

// Options every subcommand accepts.
struct Common {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out;

  void Attach(CLI::App* app, bool out_required) {
    app->add_option("--seed", seed, "random seed (overrides the config)");
    app->add_option("--config", config_path, "flat key = value run configuration")->check(CLI::ExistingFile);
    auto* o = app->add_option("--out", out, "output path");
    if (out_required) o->required();
  }

  harness::RunConfig Load() const {
    harness::RunConfig c = config_path.empty() ? harness::RunConfig{} : harness::LoadConfig(config_path);
    if (seed) c.seed = *seed;
    harness::ValidateRunConfig(c);
    return c;
  }
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `out`, or stdout when it is empty.
void Emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + out);
  f << text;
}

std::vector<Problem> Load(const std::string& path) {
  return LoadDataset(path, &lex::DefaultResources().synonyms);
}

std::string VerdictJson(const solver::Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(solver::OutcomeName(v.value));
  j["label"] = harness::LabelOf(v);
  j["steps"] = v.steps;
  j["limit_hit"] = v.limit_hit;
  return j.dump() + "\n";
}

solver::Verdict SolveProgramText(const std::string& text, harness::SolverChoice choice, const harness::RunConfig& c) {
  const bool csp = text.find("Objects:") != std::string::npos;
  if (csp || choice == harness::SolverChoice::kCsp) {
    harness::CheckSolver(TaskKind::kCsp, choice);
    const solver::CspProblem p = solver::ParseCspProblem(text);
    return solver::SolveCsp(p.spec, p.options);
  }
  const fol::LogicProgram program = fol::ParseProgram(text);
  fol::ValidateProgram(program);
  const TaskKind kind =
      program.semantics == fol::Semantics::kClosedWorld ? TaskKind::kClosedWorld : TaskKind::kOpenWorld;
  harness::CheckSolver(kind, choice);
  switch (harness::ResolveSolver(kind, choice)) {
    case harness::SolverChoice::kEnumerate:
      return solver::EnumerateModels(program);
    case harness::SolverChoice::kCwa:
      return solver::ForwardChainCwa(program);
    case harness::SolverChoice::kProver9: {
      const std::string binary = c.prover9_path.empty() ? solver::FindProver9() : c.prover9_path;
      if (binary.empty()) throw Error(ErrorCode::kExternalUnavailable, "prover9 not found on PATH");
      return solver::RunExternalProver(program, binary, c.prover9_timeout);
    }
    default:
      return solver::ProveResolution(program, c.max_steps);
  }
}

std::vector<std::size_t> ParseLevels(const std::string& text) {
  std::vector<std::size_t> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      levels.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "--levels: not a percentage list: " + text);
    }
  }
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic drift toolkit: diversify, translate, solve and measure symbol consistency"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  synth::SyntheticConfig gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic closed-world dataset");
  gen_common.Attach(generate, true);
  generate->add_option("-n,--problems", gen.n_problems, "number of problems");
  generate->add_option("--depth", gen.depth, "largest reasoning depth (1-5)");
  generate->add_option("--constants", gen.n_constants, "names per problem");
  generate->add_option("--predicates", gen.n_predicates, "attributes per problem");
  generate->add_option("--negation-rate", gen.negation_rate, "share of negated questions");

  // diversify
  Common div_common;
  std::string div_in;
  auto* diversify = app.add_subcommand("diversify", "rewrite repeated concepts with varied surface forms");
  div_common.Attach(diversify, true);
  diversify->add_option("--in", div_in, "problem JSONL")->required()->check(CLI::ExistingFile);

  // translate
  Common tr_common;
  std::string tr_in;
  auto* translate = app.add_subcommand("translate", "translate and solve each problem, writing records JSONL");
  tr_common.Attach(translate, false);
  translate->add_option("--in", tr_in, "problem JSONL")->required()->check(CLI::ExistingFile);

  // solve
  Common solve_common;
  std::string solve_program;
  std::string solve_solver = "auto";
  auto* solve = app.add_subcommand("solve", "decide one logic program file");
  solve_common.Attach(solve, false);
  solve->add_option("program", solve_program, "program text file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solve_solver, "auto|resolution|enumerate|cwa|csp|prover9");

  // evaluate
  Common eval_common;
  std::string eval_in;
  auto* evaluate = app.add_subcommand("evaluate", "run a full evaluation into a run directory");
  eval_common.Attach(evaluate, true);
  evaluate->add_option("--in", eval_in, "problem JSONL")->required()->check(CLI::ExistingFile);

  // sds
  Common sds_common;
  std::string sds_records;
  auto* sds = app.add_subcommand("sds", "symbol drift score of a records file");
  sds_common.Attach(sds, false);
  sds->add_option("records", sds_records, "records JSONL or run directory")->required()->check(CLI::ExistingPath);

  // sweep
  Common sweep_common;
  std::string sweep_in;
  std::string sweep_levels = "0,25,50,75,100";
  auto* sweep = app.add_subcommand("sweep", "accuracy and SDS across diversification intensities, as CSV");
  sweep_common.Attach(sweep, false);
  sweep->add_option("--in", sweep_in, "problem JSONL")->required()->check(CLI::ExistingFile);
  sweep->add_option("--levels", sweep_levels, "ascending percentages, comma separated");

  // compare
  Common cmp_common;
  std::string cmp_before, cmp_after;
  auto* compare = app.add_subcommand("compare", "attribute changes between two runs");
  cmp_common.Attach(compare, false);
  compare->add_option("before", cmp_before, "baseline run directory")->required()->check(CLI::ExistingDirectory);
  compare->add_option("after", cmp_after, "treated run directory")->required()->check(CLI::ExistingDirectory);

  // export-sft
  Common sft_common;
  std::string sft_run;
  auto* export_sft = app.add_subcommand("export-sft", "training records from correct mental-table traces");
  sft_common.Attach(export_sft, true);
  export_sft->add_option("run", sft_run, "run directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const harness::RunConfig c = gen_common.Load();
      gen.seed = c.seed;
      synth::ValidateConfig(gen);
      SaveDataset(gen_common.out, synth::GenerateSynthetic(gen, &lex::DefaultResources().synonyms));
    } else if (diversify->parsed()) {
      harness::RunConfig c = div_common.Load();
      c.diversify = true;
      const harness::Pipeline pipeline(c);
      std::vector<Problem> out;
      for (const Problem& p : Load(div_in)) out.push_back(pipeline.Prepare(p));
      SaveDataset(div_common.out, out);
    } else if (translate->parsed()) {
      const harness::Pipeline pipeline(tr_common.Load());
      std::string text;
      for (const Problem& p : Load(tr_in)) {
        text += metrics::RecordToJson(pipeline.Evaluate(pipeline.Prepare(p)).record) + "\n";
      }
      Emit(tr_common.out, text);
    } else if (solve->parsed()) {
      const harness::RunConfig c = solve_common.Load();
      Emit(solve_common.out,
           VerdictJson(SolveProgramText(Slurp(solve_program), harness::ParseSolver(solve_solver), c)));
    } else if (evaluate->parsed()) {
      const harness::RunReport report = harness::RunEvaluation(Load(eval_in), eval_common.Load());
      harness::WriteRun(report, eval_common.out);
      std::cout << harness::ReportText(report);
    } else if (sds->parsed()) {
      const fs::path path = fs::is_directory(sds_records) ? fs::path(sds_records) / "records.jsonl"
                                                          : fs::path(sds_records);
      const metrics::SdsReport r = metrics::ComputeSds(harness::LoadRecords(path));
      nlohmann::ordered_json j;
      j["sds"] = r.value;
      j["concepts"] = r.concepts;
      j["dropped"] = r.dropped;
      Emit(sds_common.out, j.dump() + "\n");
    } else if (sweep->parsed()) {
      const auto points = harness::IntensitySweep(Load(sweep_in), sweep_common.Load(), ParseLevels(sweep_levels));
      Emit(sweep_common.out, metrics::SweepCsv(points));
    } else if (compare->parsed()) {
      const auto attribution = metrics::AttributeErrors(harness::LoadRecords(fs::path(cmp_before) / "records.jsonl"),
                                                        harness::LoadRecords(fs::path(cmp_after) / "records.jsonl"));
      nlohmann::ordered_json j;
      for (const auto& [category, n] : attribution.counts) j["counts"][category] = n;
      for (const auto& [id, category] : attribution.category_of) j["problems"][id] = category;
      Emit(cmp_common.out, j.dump(2) + "\n");
    } else if (export_sft->parsed()) {
      sft_common.Load();
      const std::size_t n = harness::ExportSftTraces(sft_run, sft_common.out);
      std::cout << n << " traces written\n";
    }
  } catch (const Error& e) {
    std::cerr << "symdrift: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "symdrift: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

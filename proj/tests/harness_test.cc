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

#include "symdrift/harness.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support/fixtures.h"
#include "support/stub_client.h"
#include "symdrift/error.h"
#include "symdrift/synthetic.h"

namespace symdrift::harness {
namespace {

using testing::KindFixture;
using testing::MakeProblem;
using testing::Res;
using testing::StubChatClient;

namespace fs = std::filesystem;

std::vector<Problem> Synthetic(std::size_t n) {
  synth::SyntheticConfig config;
  config.n_problems = n;
  return synth::GenerateSynthetic(config, &Res().synonyms);
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("symdrift_harness_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(Config, RoundTripsThroughSnapshot) {
  RunConfig c;
  c.translator = "naive";
  c.mental = true;
  c.solver = SolverChoice::kEnumerate;
  c.diversify = true;
  c.theta = 0.85;
  c.intensity = 50;
  c.llm.style = tr::PromptStyle::kMental;
  c.llm.temperature = 0.7;
  c.workers = 3;
  c.rate_limit = 2.5;
  const std::string snapshot = RenderConfig(c);
  EXPECT_EQ(RenderConfig(ParseConfig(snapshot)), snapshot);
}

TEST(Config, CommentsAndBlankLines) {
  const RunConfig c = ParseConfig("# run\n\ntranslator = split-adversary  # adversary\nmental=on\n");
  EXPECT_EQ(c.translator, "split-adversary");
  EXPECT_TRUE(c.mental);
}

TEST(Config, Rejections) {
  EXPECT_EQ(CodeOf([] { ParseConfig("colour = red"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseConfig("workers = many"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseConfig("workers = -1"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseConfig("mental = maybe"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseConfig("just words"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ValidateRunConfig(ParseConfig("translator = oracle")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ValidateRunConfig(ParseConfig("intensity = 150")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ValidateRunConfig(ParseConfig("temperature = 3")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ValidateRunConfig(ParseConfig("theta = 1.5")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ValidateRunConfig(ParseConfig("rate_limit = -1")); }), ErrorCode::kInvalidArgument);
}

TEST(SolverGuard, MatchesTaskKinds) {
  EXPECT_NO_THROW(CheckSolver(TaskKind::kOpenWorld, SolverChoice::kResolution));
  EXPECT_NO_THROW(CheckSolver(TaskKind::kOpenWorld, SolverChoice::kEnumerate));
  EXPECT_NO_THROW(CheckSolver(TaskKind::kClosedWorld, SolverChoice::kCwa));
  EXPECT_NO_THROW(CheckSolver(TaskKind::kCsp, SolverChoice::kCsp));
  EXPECT_EQ(CodeOf([] { CheckSolver(TaskKind::kClosedWorld, SolverChoice::kResolution); }),
            ErrorCode::kSolverMismatch);
  EXPECT_EQ(CodeOf([] { CheckSolver(TaskKind::kCsp, SolverChoice::kCwa); }), ErrorCode::kSolverMismatch);
  EXPECT_EQ(ResolveSolver(TaskKind::kClosedWorld, SolverChoice::kAuto), SolverChoice::kCwa);
  EXPECT_EQ(ResolveSolver(TaskKind::kCsp, SolverChoice::kAuto), SolverChoice::kCsp);
}

TEST(SolverGuard, RunRefusesMismatch) {
  RunConfig c;
  c.solver = SolverChoice::kResolution;
  EXPECT_EQ(CodeOf([&] { RunEvaluation(Synthetic(2), c); }), ErrorCode::kSolverMismatch);
}

TEST(LabelOf, Vocabulary) {
  using solver::Outcome;
  EXPECT_EQ(LabelOf({Outcome::kProved}), "True");
  EXPECT_EQ(LabelOf({Outcome::kDisproved}), "False");
  EXPECT_EQ(LabelOf({Outcome::kUnknown}), "Unknown");
  EXPECT_EQ(LabelOf({Outcome::kTrue}), "True");
  EXPECT_EQ(LabelOf({Outcome::kFalse}), "False");
  EXPECT_EQ(LabelOf({Outcome::kOption, 2}), "C");
}

TEST(Finish, ErrorClassesFromRawPrograms) {
  Pipeline pipeline(RunConfig{});
  auto finish = [&](const Problem& p, const std::string& program) {
    tr::Translation t;
    t.program = program;
    return metrics::ClassifyError(pipeline.Finish(p, t));
  };
  const Problem open = KindFixture();
  EXPECT_EQ(finish(open, "Premises:\nall x (Kind(x) -> Smart(x)\nQuery:\nSmart(Anne)\n"), metrics::ErrorClass::kParseError);
  EXPECT_EQ(finish(open, "Premises:\nKind(Anne)\nall x (Kind(x) -> Smart(x))\nQuery:\nSmart(Anne)\n"),
            metrics::ErrorClass::kCorrect);
  EXPECT_EQ(finish(open, "Premises:\nKind(Anne)\nQuery:\nSmart(Anne)\n"), metrics::ErrorClass::kLogicError);
  EXPECT_EQ(finish(open, "Premises:\nKind(Anne)\n"), metrics::ErrorClass::kExecError);

  Problem closed = KindFixture();
  closed.task_kind = TaskKind::kClosedWorld;
  EXPECT_EQ(finish(closed, "Premises:\nKind(Anne) | Tall(Anne)\nQuery:\nSmart(Anne)\n"), metrics::ErrorClass::kExecError);

  Problem csp = MakeProblem("csp", {"Ana, Bo and Cy stand in a row."}, "Which is true?", "A", TaskKind::kCsp);
  csp.options = {"Ana is first", "Bo is first"};
  const std::string objects = "Objects: Ana, Bo, Cy\nConstraints:\nAtPosition(Ana, 1)\n";
  EXPECT_EQ(finish(csp, objects + "Options:\nAtPosition(Ana, 1)\nAtPosition(Bo, 1)\n"), metrics::ErrorClass::kCorrect);
  const auto record = [&] {
    tr::Translation t;
    t.program = objects + "LeftOf(Dan, Bo)\nOptions:\nAtPosition(Ana, 1)\nAtPosition(Bo, 1)\n";
    return pipeline.Finish(csp, t);
  }();
  EXPECT_EQ(metrics::ClassifyError(record), metrics::ErrorClass::kExecError);
  EXPECT_NE(record.exec_error->find("undefined_object"), std::string::npos);
}

TEST(RunEvaluation, EmptyDataset) {
  EXPECT_EQ(CodeOf([] { RunEvaluation({}, RunConfig{}); }), ErrorCode::kEmptyDataset);
}

TEST(RunEvaluation, GoldOnSyntheticIsPerfect) {
  const auto data = Synthetic(30);
  const RunReport r = RunEvaluation(data, RunConfig{});
  EXPECT_EQ(r.records.size(), data.size());
  EXPECT_EQ(r.accuracy, 1.0);
  ASSERT_TRUE(r.sds);
  EXPECT_EQ(r.sds->value, 0.0);
  std::size_t total = 0;
  for (const auto& [c, n] : r.histogram) total += n;
  EXPECT_EQ(total, r.records.size());
  EXPECT_EQ(r.run_id.size(), 16u);
}

TEST(RunEvaluation, FailingProblemBecomesRecord) {
  auto data = Synthetic(4);
  data.insert(data.begin() + 1, MakeProblem("odd", {"Gibberish here."}, "Anne is kind.", "True",
                                            TaskKind::kClosedWorld));
  RunConfig c;
  c.translator = "naive";
  const RunReport r = RunEvaluation(data, c);
  ASSERT_EQ(r.records.size(), 5u);
  EXPECT_EQ(r.records[1].problem_id, "odd");
  EXPECT_EQ(metrics::ClassifyError(r.records[1]), metrics::ErrorClass::kParseError);
  EXPECT_EQ(r.histogram.at(metrics::ErrorClass::kCorrect), 4u);
}

TEST(RunEvaluation, GoldWithoutGoldLogicIsRecordedNotThrown) {
  const auto r = RunEvaluation({MakeProblem("bare", {"Anne is kind."}, "Anne is kind.")}, RunConfig{});
  ASSERT_EQ(r.records.size(), 1u);
  ASSERT_TRUE(r.records[0].parse_error);
  EXPECT_NE(r.records[0].parse_error->find("missing_gold"), std::string::npos);
  EXPECT_FALSE(r.sds);
}

TEST(RunEvaluation, WorkerCountDoesNotChangeRecords) {
  const auto data = Synthetic(24);
  RunConfig c;
  c.translator = "naive";
  c.diversify = true;
  c.mental = true;
  const RunReport one = RunEvaluation(data, c);
  c.workers = 4;
  const RunReport four = RunEvaluation(data, c);
  ASSERT_EQ(one.records.size(), four.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    EXPECT_EQ(metrics::RecordToJson(one.records[i]), metrics::RecordToJson(four.records[i]));
  }
  EXPECT_EQ(ReportJson(one), ReportJson(four).replace(ReportJson(four).find(four.run_id), 16, one.run_id));
}

TEST(RunEvaluation, PersistedRunsAreByteIdentical) {
  const auto data = Synthetic(20);
  RunConfig c;
  c.translator = "split-adversary";
  c.diversify = true;
  c.mental = true;
  const fs::path a = TempDir("a"), b = TempDir("b");
  WriteRun(RunEvaluation(data, c), a);
  WriteRun(RunEvaluation(data, c), b);
  for (const char* f : {"config", "records.jsonl", "report", "report.jsonl", "traces.jsonl"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(Slurp(a / f), Slurp(b / f)) << f;
  }
  EXPECT_TRUE(fs::exists(a / "timing"));
  EXPECT_EQ(RenderConfig(LoadConfig(a / "config")), Slurp(a / "config"));
  const auto records = LoadRecords(a / "records.jsonl");
  EXPECT_EQ(records.size(), data.size());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(RunEvaluation, StubLlmTokenLedger) {
  const std::string reply =
      "```\nMode: closed-world\nPremises:\nKind(Anne)\nall x (Kind(x) -> Smart(x))\nQuery:\nSmart(Anne)\n```";
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{reply}, net::Usage{100, 20});
  std::vector<Problem> data;
  for (int i = 0; i < 3; ++i) {
    Problem p = KindFixture();
    p.id = "k" + std::to_string(i);
    p.task_kind = TaskKind::kClosedWorld;
    data.push_back(p);
  }
  RunConfig c;
  c.translator = "llm";
  const RunReport r = RunEvaluation(data, c, client);
  EXPECT_EQ(client->calls(), 3u);
  EXPECT_EQ(r.tokens_in, 300u);
  EXPECT_EQ(r.tokens_out, 60u);
  EXPECT_EQ(r.tokens_in, client->total().tokens_in);
  EXPECT_EQ(r.accuracy, 1.0);
  ASSERT_TRUE(r.sds);
  EXPECT_EQ(r.sds->value, 0.0);
}

TEST(RunEvaluation, ClientFailureAbortsRun) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"x"});
  client->set_fail(true);
  RunConfig c;
  c.translator = "llm";
  EXPECT_EQ(CodeOf([&] { RunEvaluation({KindFixture()}, c, client); }), ErrorCode::kClientError);
}

TEST(RunEvaluation, LlmOracleWithStub) {
  // Every equivalence question answered yes, every conflict no: one symbol per arity.
  auto client = std::make_shared<StubChatClient>(
      [](const std::string& prompt) { return prompt.find("modifier") != std::string::npos ? "no" : "yes"; },
      net::Usage{4, 1});
  RunConfig c;
  c.translator = "naive";
  c.mental = true;
  c.oracle = "llm";
  const RunReport r = RunEvaluation({KindFixture()}, c, client);
  ASSERT_EQ(r.traces.size(), 1u);
  EXPECT_EQ(r.traces[0].table, "{kind, smart} -> Kind\n");
  EXPECT_EQ(r.tokens_in, 4 * client->calls());
}

TEST(LlmAligner, ReadsConceptLines) {
  auto client = std::make_shared<StubChatClient>(
      std::vector<std::string>{"Kind: Kind, Benevolent\nSmart: Smart, Ghost\n"});
  const LlmAligner aligner(client, tr::DefaultPromptDir());
  std::string audit;
  net::Usage usage;
  const auto a = aligner.Align(KindFixture(),
                               "Premises:\nKind(Anne)\nall x (Benevolent(x) -> Smart(x))\nQuery:\nSmart(Anne)\n",
                               &audit, &usage);
  EXPECT_EQ(a.alignment.at("Kind"), (std::set<std::string>{"Kind", "Benevolent"}));
  EXPECT_EQ(a.alignment.at("Smart"), (std::set<std::string>{"Smart"}));
  EXPECT_TRUE(a.gaps.empty());
  EXPECT_NE(audit.find("Ghost"), std::string::npos);
  EXPECT_EQ(usage, (net::Usage{10, 5}));
  EXPECT_NE(client->prompts()[0].find("\"kind\""), std::string::npos);
}

TEST(ExportSft, CorrectTracesOnly) {
  auto data = Synthetic(3);
  data.push_back(MakeProblem("odd", {"Gibberish here."}, "Anne is kind.", "True", TaskKind::kClosedWorld));
  RunConfig c;
  c.translator = "naive";
  c.mental = true;
  c.diversify = true;
  const fs::path dir = TempDir("sft");
  const RunReport r = RunEvaluation(data, c);
  EXPECT_EQ(r.traces.size(), 4u);
  WriteRun(r, dir);
  const fs::path out = dir / "sft.jsonl";
  EXPECT_EQ(ExportSftTraces(dir, out), 3u);
  std::istringstream lines(Slurp(out));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    const auto j = nlohmann::json::parse(line);
    const std::string response = j.at("response").get<std::string>();
    EXPECT_NE(response.find("->"), std::string::npos);
    const auto program = tr::ExtractFencedBlock(response);
    ASSERT_TRUE(program);
    const std::string id = j.at("problem_id").get<std::string>();
    const auto it = std::find_if(data.begin(), data.end(), [&](const Problem& p) { return p.id == id; });
    ASSERT_NE(it, data.end());
    tr::Translation t;
    t.program = *program;
    Pipeline pipeline(RunConfig{});
    EXPECT_EQ(metrics::ClassifyError(pipeline.Finish(*it, t)), metrics::ErrorClass::kCorrect);
  }
  EXPECT_EQ(n, 3u);
  fs::remove_all(dir);
}

TEST(ExportSft, NoTraces) {
  const fs::path dir = TempDir("notraces");
  WriteRun(RunEvaluation(Synthetic(2), RunConfig{}), dir);
  EXPECT_EQ(CodeOf([&] { ExportSftTraces(dir, dir / "out.jsonl"); }), ErrorCode::kNoTraces);
  fs::remove_all(dir);
}

TEST(IntensitySweep, Levels) {
  const auto data = Synthetic(20);
  const auto single = IntensitySweep(data, RunConfig{}, {0});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].accuracy, 1.0);
  EXPECT_EQ(single[0].sds, 0.0);
  RunConfig naive;
  naive.translator = "naive";
  const auto curve = IntensitySweep(data, naive, {0, 50, 100});
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[0].accuracy, 1.0);
  EXPECT_GE(curve[0].accuracy, curve[2].accuracy);
  EXPECT_LT(curve[0].sds, curve[2].sds);
  EXPECT_EQ(CodeOf([&] { IntensitySweep(data, naive, {50, 0}); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace symdrift::harness

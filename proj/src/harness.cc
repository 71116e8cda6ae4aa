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

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "symdrift/csp.h"
#include "symdrift/error.h"
#include "symdrift/fol.h"
#include "symdrift/prover9.h"
#include "symdrift/text.h"

namespace symdrift::harness {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ParseBool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw Error(ErrorCode::kInvalidArgument, key + ": expected on/off, got '" + v + "'");
}

std::size_t ParseCount(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || v[0] == '-') {
    throw Error(ErrorCode::kInvalidArgument, key + ": expected a count, got '" + v + "'");
  }
  return static_cast<std::size_t>(n);
}

double ParseReal(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw Error(ErrorCode::kInvalidArgument, key + ": expected a number, got '" + v + "'");
  }
  return d;
}

// Shortest text that reads back to the same double.
std::string Real(double d) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// FNV-1a, 64 bit.
std::uint64_t Digest(std::string_view data, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool Fatal(const Error& e) {
  return e.code() == ErrorCode::kClientError || e.code() == ErrorCode::kOracleFailure;
}

std::size_t UnitsAt(std::size_t percent, std::size_t units) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(percent) * units / 100.0));
}

// Every gold concept, unmapped.
metrics::AlignmentResult Unaligned(const Problem& p) {
  metrics::AlignmentResult out;
  for (const auto& [span, concept_id] : p.gold_concepts) {
    out.alignment[concept_id];
    out.gaps.push_back(concept_id + ": " + std::string(p.SpanText(span)));
  }
  return out;
}

ordered_json StepJson(const mental::TraceStep& s) {
  return ordered_json{{"expression", s.expression},
                      {"decision", mental::DecisionName(s.decision)},
                      {"symbol", s.symbol},
                      {"revisions", s.revisions}};
}

mental::Decision ParseDecision(const std::string& name) {
  for (auto d : {mental::Decision::kExtend, mental::Decision::kReuse, mental::Decision::kRefine}) {
    if (mental::DecisionName(d) == name) return d;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown decision '" + name + "'");
}

}  // namespace

std::string_view SolverName(SolverChoice s) {
  switch (s) {
    case SolverChoice::kAuto:
      return "auto";
    case SolverChoice::kResolution:
      return "resolution";
    case SolverChoice::kEnumerate:
      return "enumerate";
    case SolverChoice::kCwa:
      return "cwa";
    case SolverChoice::kCsp:
      return "csp";
    case SolverChoice::kProver9:
      return "prover9";
  }
  return "?";
}

SolverChoice ParseSolver(std::string_view name) {
  for (auto s : {SolverChoice::kAuto, SolverChoice::kResolution, SolverChoice::kEnumerate, SolverChoice::kCwa,
                 SolverChoice::kCsp, SolverChoice::kProver9}) {
    if (SolverName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown solver '" + std::string(name) + "'");
}

void CheckSolver(TaskKind kind, SolverChoice s) {
  bool ok = false;
  switch (s) {
    case SolverChoice::kAuto:
      ok = true;
      break;
    case SolverChoice::kResolution:
    case SolverChoice::kEnumerate:
    case SolverChoice::kProver9:
      ok = kind == TaskKind::kOpenWorld;
      break;
    case SolverChoice::kCwa:
      ok = kind == TaskKind::kClosedWorld;
      break;
    case SolverChoice::kCsp:
      ok = kind == TaskKind::kCsp;
      break;
  }
  if (!ok) {
    throw Error(ErrorCode::kSolverMismatch, std::string(SolverName(s)) + " cannot decide " +
                                                std::string(TaskKindName(kind)) + " problems");
  }
}

SolverChoice ResolveSolver(TaskKind kind, SolverChoice s) {
  CheckSolver(kind, s);
  if (s != SolverChoice::kAuto) return s;
  switch (kind) {
    case TaskKind::kOpenWorld:
      return SolverChoice::kResolution;
    case TaskKind::kClosedWorld:
      return SolverChoice::kCwa;
    case TaskKind::kCsp:
      return SolverChoice::kCsp;
  }
  return SolverChoice::kResolution;
}

RunConfig ParseConfig(std::string_view text) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string v = Trim(line.substr(eq + 1));
    if (key == "translator") {
      c.translator = v;
    } else if (key == "mental") {
      c.mental = ParseBool(key, v);
    } else if (key == "oracle") {
      c.oracle = v;
    } else if (key == "aligner") {
      c.aligner = v;
    } else if (key == "solver") {
      c.solver = ParseSolver(v);
    } else if (key == "max_steps") {
      c.max_steps = ParseCount(key, v);
    } else if (key == "prover9_path") {
      c.prover9_path = v;
    } else if (key == "prover9_timeout") {
      c.prover9_timeout = ParseReal(key, v);
    } else if (key == "diversify") {
      c.diversify = ParseBool(key, v);
    } else if (key == "theta") {
      c.theta = ParseReal(key, v);
    } else if (key == "intensity") {
      c.intensity = ParseCount(key, v);
    } else if (key == "scorer") {
      c.scorer = v;
    } else if (key == "vectors_path") {
      c.vectors_path = v;
    } else if (key == "rewriter") {
      c.rewriter = ParseBool(key, v);
    } else if (key == "prompt_style") {
      c.llm.style = tr::ParsePromptStyle(v);
    } else if (key == "prompt_dir") {
      c.llm.prompt_dir = v;
    } else if (key == "shots") {
      c.llm.shots = ParseCount(key, v);
    } else if (key == "temperature") {
      c.llm.temperature = ParseReal(key, v);
    } else if (key == "lexicon_dir") {
      c.lexicon_dir = v;
    } else if (key == "seed") {
      c.seed = ParseCount(key, v);
    } else if (key == "workers") {
      c.workers = ParseCount(key, v);
    } else if (key == "rate_limit") {
      c.rate_limit = ParseReal(key, v);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig LoadConfig(const std::filesystem::path& path) { return ParseConfig(ReadFile(path)); }

std::string RenderConfig(const RunConfig& c) {
  std::ostringstream out;
  auto onoff = [](bool b) { return b ? "on" : "off"; };
  out << "translator = " << c.translator << '\n'
      << "mental = " << onoff(c.mental) << '\n'
      << "oracle = " << c.oracle << '\n'
      << "aligner = " << c.aligner << '\n'
      << "solver = " << SolverName(c.solver) << '\n'
      << "max_steps = " << c.max_steps << '\n'
      << "prover9_path = " << c.prover9_path << '\n'
      << "prover9_timeout = " << Real(c.prover9_timeout) << '\n'
      << "diversify = " << onoff(c.diversify) << '\n'
      << "theta = " << Real(c.theta) << '\n'
      << "intensity = " << c.intensity << '\n'
      << "scorer = " << c.scorer << '\n'
      << "vectors_path = " << c.vectors_path.string() << '\n'
      << "rewriter = " << onoff(c.rewriter) << '\n'
      << "prompt_style = " << tr::PromptStyleName(c.llm.style) << '\n'
      << "prompt_dir = " << c.llm.prompt_dir.string() << '\n'
      << "shots = " << c.llm.shots << '\n'
      << "temperature = " << Real(c.llm.temperature) << '\n'
      << "lexicon_dir = " << c.lexicon_dir.string() << '\n'
      << "seed = " << c.seed << '\n'
      << "workers = " << c.workers << '\n'
      << "rate_limit = " << Real(c.rate_limit) << '\n';
  return out.str();
}

void ValidateRunConfig(const RunConfig& c) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  static const std::vector<std::string> kTranslators = {"gold", "naive", "split-adversary", "llm"};
  if (std::find(kTranslators.begin(), kTranslators.end(), c.translator) == kTranslators.end()) {
    bad("unknown translator '" + c.translator + "'");
  }
  if (c.oracle != "lexicon" && c.oracle != "llm") bad("unknown oracle '" + c.oracle + "'");
  if (c.aligner != "provenance" && c.aligner != "llm") bad("unknown aligner '" + c.aligner + "'");
  if (!(c.theta >= 0 && c.theta <= 1)) bad("theta must lie in [0, 1]");
  if (c.intensity > 100) bad("intensity is a percentage, at most 100");
  if (c.workers == 0) bad("workers must be positive");
  if (!(c.rate_limit >= 0)) bad("rate_limit must be non-negative");
  if (c.max_steps == 0) bad("max_steps must be positive");
  if (!(c.prover9_timeout > 0)) bad("prover9_timeout must be positive");
  tr::ValidateLlmConfig(c.llm);
}

std::string LabelOf(const solver::Verdict& v) {
  switch (v.value) {
    case solver::Outcome::kProved:
    case solver::Outcome::kTrue:
      return "True";
    case solver::Outcome::kDisproved:
    case solver::Outcome::kFalse:
      return "False";
    case solver::Outcome::kUnknown:
      return "Unknown";
    case solver::Outcome::kOption:
      return OptionLetter(v.option);
  }
  return "Unknown";
}

std::string TraceToJson(const MentalTrace& t) {
  ordered_json j;
  j["problem_id"] = t.problem_id;
  j["instruction"] = t.instruction;
  j["table"] = t.table;
  ordered_json steps = ordered_json::array();
  for (const auto& s : t.steps) steps.push_back(StepJson(s));
  j["trace"] = steps;
  if (t.program) {
    j["program"] = *t.program;
  } else {
    j["program"] = nullptr;
  }
  j["correct"] = t.correct;
  return j.dump();
}

MentalTrace TraceFromJson(std::string_view text, std::size_t line) {
  try {
    const json j = json::parse(text);
    MentalTrace t;
    t.problem_id = j.at("problem_id").get<std::string>();
    t.instruction = j.at("instruction").get<std::string>();
    t.table = j.at("table").get<std::string>();
    for (const json& s : j.at("trace")) {
      t.steps.push_back(mental::TraceStep{s.at("expression").get<std::string>(),
                                          ParseDecision(s.at("decision").get<std::string>()),
                                          s.at("symbol").get<std::string>(), s.at("revisions").get<std::size_t>()});
    }
    if (!j.at("program").is_null()) t.program = j.at("program").get<std::string>();
    t.correct = j.at("correct").get<bool>();
    return t;
  } catch (const json::exception& e) {
    throw FormatError(line, std::string("bad trace: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(line, e.what());
  }
}

LlmAligner::LlmAligner(std::shared_ptr<net::ChatClient> client, std::filesystem::path prompt_dir)
    : client_(std::move(client)) {
  const auto dir = prompt_dir.empty() ? tr::DefaultPromptDir() : prompt_dir;
  try {
    template_ = ReadFile(dir / "align.txt");
  } catch (const Error&) {
    throw Error(ErrorCode::kResourceMissing, "alignment prompt missing: " + (dir / "align.txt").string());
  }
}

metrics::AlignmentResult LlmAligner::Align(const Problem& p, const std::string& program, std::string* audit,
                                           net::Usage* usage) const {
  if (program.empty()) throw Error(ErrorCode::kAlignmentIncomplete, "no program to align for " + p.id);
  std::map<std::string, std::set<std::string>> surfaces;
  for (const auto& [span, concept_id] : p.gold_concepts) surfaces[concept_id].insert(std::string(p.SpanText(span)));
  std::string concepts;
  for (const auto& [concept_id, forms] : surfaces) {
    concepts += "- " + concept_id + ":";
    for (const auto& f : forms) concepts += " \"" + f + "\"";
    concepts += '\n';
  }
  std::string prompt = template_;
  auto put = [&](const std::string& key, const std::string& value) {
    for (std::size_t at = prompt.find(key); at != std::string::npos; at = prompt.find(key, at + value.size())) {
      prompt.replace(at, key.size(), value);
    }
  };
  put("{{problem}}", p.Text());
  put("{{program}}", program);
  put("{{concepts}}", concepts);
  net::ChatReply reply = client_->Complete({net::ChatMessage{"user", prompt}}, 0.0);
  if (audit) *audit = reply.text;
  if (usage) *usage += reply.usage;

  std::set<std::string> predicates;
  if (p.task_kind != TaskKind::kCsp) {
    const fol::LogicProgram prog = fol::ParseProgram(program);
    for (fol::SymbolId id : prog.registry.Symbols(fol::SymbolKind::kPredicate)) {
      predicates.insert(prog.registry.Name(id));
    }
  }
  metrics::AlignmentResult out;
  for (const auto& [concept_id, forms] : surfaces) out.alignment[concept_id];
  std::istringstream in(reply.text);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = Trim(line.substr(0, colon));
    key.erase(0, key.find_first_not_of("-* "));
    auto it = out.alignment.find(key);
    if (it == out.alignment.end()) continue;
    std::istringstream syms(line.substr(colon + 1));
    std::string sym;
    while (std::getline(syms, sym, ',')) {
      sym = Trim(sym);
      if (predicates.count(sym)) it->second.insert(sym);
    }
  }
  for (const auto& [concept_id, syms] : out.alignment) {
    if (syms.empty()) out.gaps.push_back(concept_id + ": no symbol named by the aligner");
  }
  return out;
}

Pipeline::Pipeline(RunConfig config, std::shared_ptr<net::ChatClient> client)
    : config_(std::move(config)), client_(std::move(client)) {
  ValidateRunConfig(config_);
  if (config_.lexicon_dir.empty()) {
    resources_ = &lex::DefaultResources();
  } else {
    owned_resources_ = std::make_unique<lex::Resources>(lex::LoadResources(config_.lexicon_dir));
    resources_ = owned_resources_.get();
  }
  const text::PosHints* hints = &resources_->synonyms;
  const bool needs_client =
      config_.translator == "llm" || (config_.mental && config_.oracle == "llm") || config_.aligner == "llm";
  if (needs_client && !client_) {
    net::Endpoint endpoint = net::ChatEndpointFromEnv();
    if (endpoint.url.empty()) throw Error(ErrorCode::kClientError, "SYMDRIFT_LLM_URL is not set");
    if (config_.rate_limit > 0) {
      limiter_ = std::make_unique<net::TokenBucket>(config_.rate_limit, std::max(1.0, config_.rate_limit));
    }
    client_ = std::make_shared<net::HttpChatClient>(std::move(endpoint), limiter_.get());
  }
  if (config_.llm.prompt_dir.empty()) config_.llm.prompt_dir = tr::DefaultPromptDir();

  if (config_.translator == "gold") {
    translator_ = std::make_unique<tr::GoldTranslator>();
  } else if (config_.translator == "naive") {
    translator_ = std::make_unique<tr::NaiveTranslator>(hints);
  } else if (config_.translator == "split-adversary") {
    translator_ = std::make_unique<tr::SplitAdversaryTranslator>(hints);
  } else {
    translator_ = std::make_unique<tr::LlmTranslator>(client_, config_.llm);
  }
  if (config_.mental) {
    if (config_.oracle == "llm") {
      oracle_ = std::make_unique<mental::LlmOracle>(client_, mental::LlmOracleConfig{config_.llm.prompt_dir, 0.0});
    } else {
      oracle_ = std::make_unique<mental::LexiconOracle>(resources_);
    }
  }
  if (config_.aligner == "llm") aligner_ = std::make_unique<LlmAligner>(client_, config_.llm.prompt_dir);
  if (config_.diversify) {
    scorer_ = sim::MakeScorer(sim::ScorerConfig{config_.scorer, config_.vectors_path}, resources_->synonyms);
    if (config_.rewriter) rewriter_ = std::make_unique<div::RuleRewriter>(resources_);
  }
}

Pipeline::~Pipeline() = default;

Problem Pipeline::Prepare(const Problem& p) const {
  if (!config_.diversify) return p;
  div::DiversifyConfig dc;
  dc.theta = config_.theta;
  if (config_.intensity < 100) dc.intensity = UnitsAt(config_.intensity, p.unit_count());
  dc.scorer = scorer_.get();
  dc.resources = resources_;
  dc.rewriter = rewriter_.get();
  return div::DiversifyProblem(p, dc).problem;
}

metrics::TranslationRecord Pipeline::Finish(const Problem& p, const tr::Translation& t) const {
  metrics::TranslationRecord r;
  r.problem_id = p.id;
  r.task_kind = p.task_kind;
  r.raw_output = t.raw;
  r.gold = p.answer;
  r.tokens_in = t.usage.tokens_in;
  r.tokens_out = t.usage.tokens_out;
  if (!t.program) {
    r.parse_error = t.parse_error.value_or("translator produced no program");
    return r;
  }
  const SolverChoice solver = ResolveSolver(p.task_kind, config_.solver);
  if (p.task_kind == TaskKind::kCsp) {
    solver::CspProblem csp;
    try {
      csp = solver::ParseCspProblem(*t.program);
    } catch (const Error& e) {
      r.parse_error = e.what();
      return r;
    }
    r.program = *t.program;
    try {
      r.verdict = solver::SolveCsp(csp.spec, csp.options);
    } catch (const Error& e) {
      r.exec_error = e.what();
      return r;
    }
  } else {
    fol::LogicProgram program;
    try {
      program = fol::ParseProgram(*t.program);
    } catch (const Error& e) {
      r.parse_error = e.what();
      return r;
    }
    r.program = *t.program;
    // The task, not the translator, fixes the semantics.
    program.semantics = tr::SemanticsOf(p.task_kind);
    try {
      if (!program.query) throw Error(ErrorCode::kTypeError, "program has no query");
      fol::ValidateProgram(program);
      switch (solver) {
        case SolverChoice::kEnumerate:
          r.verdict = solver::EnumerateModels(program);
          break;
        case SolverChoice::kCwa:
          r.verdict = solver::ForwardChainCwa(program);
          break;
        case SolverChoice::kProver9: {
          const std::string binary = config_.prover9_path.empty() ? solver::FindProver9() : config_.prover9_path;
          if (binary.empty()) throw Error(ErrorCode::kExternalUnavailable, "prover9 not found on PATH");
          r.verdict = solver::RunExternalProver(program, binary, config_.prover9_timeout);
          break;
        }
        default:
          r.verdict = solver::ProveResolution(program, config_.max_steps);
          break;
      }
    } catch (const Error& e) {
      r.exec_error = e.what();
      return r;
    }
  }
  r.predicted = LabelOf(*r.verdict);
  return r;
}

ProblemResult Pipeline::Evaluate(const Problem& p) const {
  ProblemResult out;
  tr::Translation t;
  std::optional<mental::MentalResult> mr;
  try {
    if (oracle_ && p.task_kind != TaskKind::kCsp) {
      mr = mental::TranslateWithMental(p, *translator_, *oracle_, &resources_->synonyms);
      t = mr->translation;
    } else {
      t = translator_->Translate(p);
    }
  } catch (const Error& e) {
    if (Fatal(e)) throw;
    t = tr::Translation{};
    t.parse_error = e.what();
  }
  out.record = Finish(p, t);

  metrics::AlignmentResult alignment;
  if (!out.record.program) {
    alignment = Unaligned(p);
  } else if (aligner_) {
    std::string audit;
    net::Usage usage;
    try {
      alignment = aligner_->Align(p, *out.record.program, &audit, &usage);
    } catch (const Error& e) {
      if (Fatal(e)) throw;
      alignment = Unaligned(p);
    }
    out.record.tokens_in += usage.tokens_in;
    out.record.tokens_out += usage.tokens_out;
  } else {
    try {
      alignment = metrics::AlignSymbols(t, p);
    } catch (const Error&) {
      alignment = Unaligned(p);
    }
  }
  out.record.alignment = std::move(alignment.alignment);
  out.record.alignment_gaps = std::move(alignment.gaps);

  if (mr) {
    out.trace = MentalTrace{p.id,         p.Text(),
                            mr->table.Render(), mr->trace,
                            out.record.program, metrics::ClassifyError(out.record) == metrics::ErrorClass::kCorrect};
  }
  return out;
}

RunReport RunEvaluation(const std::vector<Problem>& dataset, const RunConfig& config,
                        std::shared_ptr<net::ChatClient> client) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  ValidateRunConfig(config);
  for (const Problem& p : dataset) CheckSolver(p.task_kind, config.solver);
  const auto start = std::chrono::steady_clock::now();
  Pipeline pipeline(config, std::move(client));

  std::vector<std::optional<ProblemResult>> results(dataset.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::size_t failure_index = dataset.size();
  std::mutex mu;
  auto work = [&] {
    while (!abort) {
      const std::size_t i = next++;
      if (i >= dataset.size()) return;
      try {
        results[i] = pipeline.Evaluate(pipeline.Prepare(dataset[i]));
      } catch (...) {
        std::lock_guard lock(mu);
        // Report the earliest failing problem, so the error does not depend on scheduling.
        if (i < failure_index) {
          failure = std::current_exception();
          failure_index = i;
        }
        abort = true;
      }
    }
  };
  const std::size_t n_workers = std::min(config.workers, dataset.size());
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunReport report;
  report.config = RenderConfig(config);
  std::uint64_t h = Digest(report.config);
  for (const Problem& p : dataset) h = Digest(ProblemToJson(p), h);
  std::ostringstream id;
  id << std::hex << std::setw(16) << std::setfill('0') << h;
  report.run_id = id.str();
  for (auto& r : results) {
    report.records.push_back(std::move(r->record));
    if (r->trace) report.traces.push_back(std::move(*r->trace));
  }
  for (const auto& rec : report.records) {
    report.tokens_in += rec.tokens_in;
    report.tokens_out += rec.tokens_out;
  }
  report.accuracy = metrics::Accuracy(report.records);
  report.histogram = metrics::Histogram(report.records);
  try {
    report.sds = metrics::ComputeSds(report.records);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyConceptSet) throw;
  }
  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string ReportText(const RunReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "run        " << r.run_id << '\n';
  out << "problems   " << r.records.size() << '\n';
  out << "accuracy   " << r.accuracy << '\n';
  if (r.sds) {
    out << "sds        " << r.sds->value << "  (" << r.sds->concepts << " concepts, " << r.sds->dropped
        << " dropped)\n";
  } else {
    out << "sds        n/a\n";
  }
  for (const auto& [c, n] : r.histogram) {
    out << std::left << std::setw(11) << metrics::ErrorClassName(c) << n << '\n';
  }
  out << "tokens in  " << r.tokens_in << '\n';
  out << "tokens out " << r.tokens_out << '\n';
  return out.str();
}

std::string ReportJson(const RunReport& r) {
  ordered_json j;
  j["run_id"] = r.run_id;
  j["problems"] = r.records.size();
  j["accuracy"] = r.accuracy;
  if (r.sds) {
    j["sds"] = r.sds->value;
    j["concepts"] = r.sds->concepts;
    j["dropped_concepts"] = r.sds->dropped;
    j["sds_per_problem"] = r.sds->per_problem;
  } else {
    j["sds"] = nullptr;
  }
  ordered_json hist = ordered_json::object();
  for (const auto& [c, n] : r.histogram) hist[std::string(metrics::ErrorClassName(c))] = n;
  j["error_classes"] = hist;
  j["tokens_in"] = r.tokens_in;
  j["tokens_out"] = r.tokens_out;
  return j.dump();
}

void WriteRun(const RunReport& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  WriteFile(dir / "config", r.config);
  std::string records;
  for (const auto& rec : r.records) records += metrics::RecordToJson(rec) + '\n';
  WriteFile(dir / "records.jsonl", records);
  WriteFile(dir / "report", ReportText(r));
  WriteFile(dir / "report.jsonl", ReportJson(r) + '\n');
  std::string traces;
  for (const auto& t : r.traces) traces += TraceToJson(t) + '\n';
  if (!traces.empty()) {
    WriteFile(dir / "traces.jsonl", traces);
  } else {
    std::filesystem::remove(dir / "traces.jsonl", ec);
  }
  std::ostringstream timing;
  timing << std::fixed << std::setprecision(3) << r.wall_clock_s << '\n';
  WriteFile(dir / "timing", timing.str());
}

std::vector<metrics::TranslationRecord> LoadRecords(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<metrics::TranslationRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Trim(line).empty()) continue;
    out.push_back(metrics::RecordFromJson(line, n));
  }
  return out;
}

std::size_t ExportSftTraces(const std::filesystem::path& run_dir, const std::filesystem::path& out) {
  const auto path = run_dir / "traces.jsonl";
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::kNoTraces, run_dir.string() + " holds no traces");
  std::istringstream in(ReadFile(path));
  std::string line, body;
  std::size_t n = 0, traced = 0, written = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Trim(line).empty()) continue;
    ++traced;
    const MentalTrace t = TraceFromJson(line, n);
    if (!t.correct || !t.program) continue;
    ordered_json j;
    j["problem_id"] = t.problem_id;
    j["instruction"] = t.instruction;
    j["response"] = "Mental representation table:\n" + t.table + "\nProgram:\n```\n" + *t.program + "```\n";
    body += j.dump() + '\n';
    ++written;
  }
  if (traced == 0) throw Error(ErrorCode::kNoTraces, run_dir.string() + " holds no traces");
  WriteFile(out, body);
  return written;
}

std::vector<metrics::SweepPoint> IntensitySweep(const std::vector<Problem>& dataset, const RunConfig& config,
                                                const std::vector<std::size_t>& levels,
                                                std::shared_ptr<net::ChatClient> client) {
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw Error(ErrorCode::kInvalidArgument, "sweep levels must be ascending");
  }
  std::vector<metrics::SweepPoint> curve;
  for (std::size_t level : levels) {
    RunConfig c = config;
    c.diversify = true;
    c.intensity = level;
    const RunReport r = RunEvaluation(dataset, c, client);
    curve.push_back(metrics::SweepPoint{level, r.accuracy, r.sds ? r.sds->value : 0.0});
  }
  return curve;
}

}  // namespace symdrift::harness

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

// Python bindings. Structured values cross the boundary as JSON text; the
// package wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "symdrift/csp.h"
#include "symdrift/error.h"
#include "symdrift/fol.h"
#include "symdrift/harness.h"
#include "symdrift/lexicon.h"
#include "symdrift/metrics.h"
#include "symdrift/problem.h"
#include "symdrift/solver.h"
#include "symdrift/synthetic.h"

namespace py = pybind11;
using namespace symdrift;

namespace {

const text::PosHints* Hints() { return &lex::DefaultResources().synonyms; }

std::vector<Problem> Problems(const std::vector<std::string>& lines) {
  std::vector<Problem> out;
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(ProblemFromJson(lines[i], i + 1, Hints()));
  return out;
}

std::vector<std::string> ProblemLines(const std::vector<Problem>& problems) {
  std::vector<std::string> out;
  for (const Problem& p : problems) out.push_back(ProblemToJson(p));
  return out;
}

std::vector<metrics::TranslationRecord> Records(const std::vector<std::string>& lines) {
  std::vector<metrics::TranslationRecord> out;
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(metrics::RecordFromJson(lines[i], i + 1));
  return out;
}

std::string VerdictJson(const solver::Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(solver::OutcomeName(v.value));
  j["label"] = harness::LabelOf(v);
  j["steps"] = v.steps;
  j["limit_hit"] = v.limit_hit;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symdrift native core";

  // Messages read "<code>: <detail>".
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def(
      "generate_synthetic",
      [](std::size_t n, std::size_t depth, std::uint64_t seed) {
        synth::SyntheticConfig c;
        c.n_problems = n;
        c.depth = depth;
        c.seed = seed;
        synth::ValidateConfig(c);
        return ProblemLines(synth::GenerateSynthetic(c, Hints()));
      },
      py::arg("n") = 200, py::arg("depth") = 5, py::arg("seed") = 7);

  m.def(
      "diversify",
      [](const std::vector<std::string>& problems, const std::string& config) {
        harness::RunConfig c = harness::ParseConfig(config);
        c.diversify = true;
        harness::ValidateRunConfig(c);
        const harness::Pipeline pipeline(c);
        std::vector<Problem> out;
        for (const Problem& p : Problems(problems)) out.push_back(pipeline.Prepare(p));
        return ProblemLines(out);
      },
      py::arg("problems"), py::arg("config") = "");

  m.def(
      "solve",
      [](const std::string& program, bool csp, std::size_t max_steps) {
        if (csp) {
          const solver::CspProblem p = solver::ParseCspProblem(program);
          return VerdictJson(solver::SolveCsp(p.spec, p.options));
        }
        const fol::LogicProgram lp = fol::ParseProgram(program);
        fol::ValidateProgram(lp);
        return VerdictJson(lp.semantics == fol::Semantics::kClosedWorld ? solver::ForwardChainCwa(lp)
                                                                         : solver::ProveResolution(lp, max_steps));
      },
      py::arg("program"), py::arg("csp") = false, py::arg("max_steps") = solver::kDefaultMaxSteps);

  m.def(
      "enumerate_models",
      [](const std::string& program) { return VerdictJson(solver::EnumerateModels(fol::ParseProgram(program))); },
      py::arg("program"));

  m.def(
      "normalize_program", [](const std::string& program) { return fol::RenderProgram(fol::ParseProgram(program)); },
      py::arg("program"));

  m.def(
      "evaluate",
      [](const std::vector<std::string>& problems, const std::string& config, const std::string& out_dir) {
        const harness::RunConfig c = harness::ParseConfig(config);
        harness::ValidateRunConfig(c);
        const std::vector<Problem> data = Problems(problems);
        harness::RunReport report;
        {
          py::gil_scoped_release release;
          report = harness::RunEvaluation(data, c);
        }
        if (!out_dir.empty()) harness::WriteRun(report, out_dir);
        std::vector<std::string> records;
        for (const auto& r : report.records) records.push_back(metrics::RecordToJson(r));
        return py::make_tuple(harness::ReportJson(report), records);
      },
      py::arg("problems"), py::arg("config") = "", py::arg("out_dir") = "");

  m.def(
      "compute_sds",
      [](const std::vector<std::string>& records) {
        const metrics::SdsReport r = metrics::ComputeSds(Records(records));
        return py::make_tuple(r.value, r.concepts, r.dropped);
      },
      py::arg("records"));

  m.def(
      "classify_error",
      [](const std::string& record) {
        return std::string(metrics::ErrorClassName(metrics::ClassifyError(metrics::RecordFromJson(record))));
      },
      py::arg("record"));

  m.def(
      "attribute_errors",
      [](const std::vector<std::string>& before, const std::vector<std::string>& after) {
        return metrics::AttributeErrors(Records(before), Records(after)).counts;
      },
      py::arg("before"), py::arg("after"));

  m.def("render_config", [](const std::string& config) { return harness::RenderConfig(harness::ParseConfig(config)); },
        py::arg("config") = "");
}

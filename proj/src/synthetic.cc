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

#include "symdrift/synthetic.h"

#include <algorithm>
#include <random>
#include <set>

#include "symdrift/error.h"
#include "symdrift/fol.h"
#include "symdrift/solver.h"

namespace symdrift::synth {

namespace {

using Rng = std::mt19937_64;

std::size_t Draw(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool Chance(Rng& rng, double p) { return static_cast<double>(rng() % 1000000) < p * 1e6; }

template <typename T>
void Shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Draw(rng, i)]);
}

struct Rule {
  std::vector<std::size_t> body;  // attribute indices
  std::size_t head;
};

struct Fact {
  std::size_t name;
  std::size_t attr;
};

struct Draft {
  std::vector<std::string> names, attrs;
  std::vector<Fact> facts;
  std::vector<Rule> rules;
  std::size_t query_name = 0, query_attr = 0;
  bool negated = false;
  bool label = false;
};

// One sentence plus the gold formula and its attribute spans.
struct Rendered {
  std::string text;
  std::string formula;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // byte ranges of attributes
  std::vector<std::string> concepts;
};

std::string Pred(const std::string& attr) { return text::Capitalize(attr); }

Rendered RenderFact(const Draft& d, std::size_t name, std::size_t attr, bool negated) {
  Rendered r;
  r.text = d.names[name] + (negated ? " is not " : " is ");
  r.spans.emplace_back(r.text.size(), r.text.size() + d.attrs[attr].size());
  r.concepts.push_back(Pred(d.attrs[attr]));
  r.text += d.attrs[attr] + ".";
  r.formula = std::string(negated ? "~" : "") + Pred(d.attrs[attr]) + "(" + d.names[name] + ")";
  return r;
}

Rendered RenderRule(const Draft& d, const Rule& rule) {
  Rendered r;
  r.text = "All ";
  std::string body;
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (i > 0) {
      r.text += " and ";
      body += " & ";
    }
    const std::string& a = d.attrs[rule.body[i]];
    r.spans.emplace_back(r.text.size(), r.text.size() + a.size());
    r.concepts.push_back(Pred(a));
    r.text += a;
    body += Pred(a) + "(x)";
  }
  r.text += " people are ";
  const std::string& h = d.attrs[rule.head];
  r.spans.emplace_back(r.text.size(), r.text.size() + h.size());
  r.concepts.push_back(Pred(h));
  r.text += h + ".";
  r.formula = "all x (" + body + " -> " + Pred(h) + "(x))";
  return r;
}

std::string ProgramText(const Draft& d, const std::vector<Rendered>& premises, const Rendered& query) {
  std::string out = "Mode: closed-world\nPremises:\n";
  for (const Rendered& r : premises) out += r.formula + "\n";
  out += "Query:\n" + query.formula + "\n";
  (void)d;
  return out;
}

// Builds a candidate rule base; the caller checks depth and label.
Draft MakeDraft(const SyntheticConfig& cfg, std::size_t depth, bool want_true, Rng& rng) {
  Draft d;
  std::vector<std::string> names = NamePool(), attrs = AttributePool();
  Shuffle(names, rng);
  Shuffle(attrs, rng);
  d.names.assign(names.begin(), names.begin() + static_cast<long>(cfg.n_constants));
  d.attrs.assign(attrs.begin(), attrs.begin() + static_cast<long>(cfg.n_predicates));
  const std::size_t n_extra = cfg.n_predicates - (depth + 1);
  auto extra = [&]() { return depth + 1 + Draw(rng, n_extra); };

  // Chain a0 -> a1 -> ... -> a_depth for the first name.
  d.facts.push_back({0, 0});
  for (std::size_t j = 1; j <= depth; ++j) {
    Rule rule{{j - 1}, j};
    if (cfg.rule_branching >= 2 && Chance(rng, 0.3)) {
      const std::size_t e = extra();
      rule.body.push_back(e);
      d.facts.push_back({0, e});
    }
    d.rules.push_back(rule);
  }
  // Distractors: facts about the other names and rules among the extras.
  for (std::size_t n = 1; n < d.names.size(); ++n) {
    d.facts.push_back({n, extra()});
    if (Chance(rng, 0.5)) d.facts.push_back({n, extra()});
  }
  const std::size_t n_rules = 1 + Draw(rng, 2);
  for (std::size_t i = 0; i < n_rules; ++i) {
    const std::size_t head = extra();
    std::size_t from = Chance(rng, 0.5) ? Draw(rng, depth + 1) : extra();
    if (from == head) continue;
    Rule rule{{from}, head};
    if (cfg.rule_branching >= 2 && Chance(rng, 0.3)) {
      const std::size_t second = extra();
      if (second != head && second != from) rule.body.push_back(second);
    }
    d.rules.push_back(rule);
  }
  // Facts and rules shared by name/attribute pairs are dropped.
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<Fact> facts;
  for (const Fact& f : d.facts) {
    if (seen.insert({f.name, f.attr}).second) facts.push_back(f);
  }
  d.facts = std::move(facts);

  d.negated = Chance(rng, cfg.negation_rate);
  d.label = want_true;
  d.query_attr = depth;
  // A positive True query and a negated False query ask about the chain's
  // subject; the other two ask about a name the chain does not reach.
  const bool about_subject = want_true != d.negated;
  d.query_name = about_subject ? 0 : 1 + Draw(rng, d.names.size() - 1);
  return d;
}

}  // namespace

void ValidateConfig(const SyntheticConfig& c) {
  if (c.n_problems == 0 || c.depth == 0 || c.n_constants == 0 || c.n_predicates == 0 ||
      c.rule_branching == 0) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic counts must be positive");
  }
  if (c.depth > 5) throw Error(ErrorCode::kInvalidArgument, "depth must be at most 5");
  if (c.n_constants < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two names");
  if (c.n_constants > NamePool().size()) throw Error(ErrorCode::kInvalidArgument, "too many names");
  if (c.n_predicates < c.depth + 2 || c.n_predicates > AttributePool().size()) {
    throw Error(ErrorCode::kInvalidArgument, "n_predicates must lie in [depth + 2, " +
                                                 std::to_string(AttributePool().size()) + "]");
  }
  if (c.negation_rate < 0 || c.negation_rate > 1) {
    throw Error(ErrorCode::kInvalidArgument, "negation_rate must lie in [0, 1]");
  }
}

const std::vector<std::string>& AttributePool() {
  static const std::vector<std::string> pool = {
      "kind",  "smart", "big",    "quiet",  "red",    "young", "rough",  "round",
      "cold",  "green", "nice",   "happy",  "furry",  "blue",  "white",  "strong",
      "brave", "rich",  "tall",   "fast",   "honest", "busy",  "calm",   "popular"};
  return pool;
}

const std::vector<std::string>& NamePool() {
  static const std::vector<std::string> pool = {"Anne", "Bob", "Charlie", "Dave", "Erin",
                                                "Fiona", "Gary", "Harry"};
  return pool;
}

std::size_t DepthOf(const Problem& p) {
  const std::size_t at = p.id.rfind("-d");
  if (at == std::string::npos) return 0;
  return static_cast<std::size_t>(std::stoul(p.id.substr(at + 2)));
}

std::vector<Problem> GenerateSynthetic(const SyntheticConfig& cfg, const text::PosHints* hints) {
  ValidateConfig(cfg);
  std::vector<Problem> problems;
  for (std::size_t i = 0; i < cfg.n_problems; ++i) {
    const std::size_t depth = 1 + i % cfg.depth;
    const bool want_true = i % 2 == 0;
    Rng rng(cfg.seed * 0x9E3779B97F4A7C15ULL + i);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 100) {
        throw Error(ErrorCode::kOracleFailure, "could not build problem " + std::to_string(i));
      }
      Draft d = MakeDraft(cfg, depth, want_true, rng);

      std::vector<Rendered> premises;
      for (const Fact& f : d.facts) premises.push_back(RenderFact(d, f.name, f.attr, false));
      for (const Rule& r : d.rules) premises.push_back(RenderRule(d, r));
      Shuffle(premises, rng);
      const Rendered query = RenderFact(d, d.query_name, d.query_attr, d.negated);

      const std::string gold = ProgramText(d, premises, query);
      const fol::LogicProgram program = fol::ParseProgram(gold);
      const solver::Saturation sat = solver::Saturate(program);
      auto atom = [&](std::size_t name, std::size_t attr) {
        return solver::GroundAtom{*program.registry.Find(Pred(d.attrs[attr]), fol::SymbolKind::kPredicate),
                                  {*program.registry.Find(d.names[name], fol::SymbolKind::kConstant)}};
      };
      // The chain's end must sit at exactly `depth` for the subject and be
      // unreachable for the other name the question may ask about.
      const auto it = sat.depth.find(atom(0, depth));
      if (it == sat.depth.end() || it->second != depth) continue;
      if (d.query_name != 0 && sat.Contains(atom(d.query_name, depth))) continue;

      const solver::Verdict v = solver::ForwardChainCwa(program);
      const bool label = v.value == solver::Outcome::kTrue;
      if (label != d.label) {
        throw Error(ErrorCode::kOracleFailure, "generator label disagrees with forward chaining");
      }

      Problem p;
      p.id = "synth-" + std::to_string(cfg.seed) + "-" + std::to_string(i) + "-d" + std::to_string(depth);
      p.task_kind = TaskKind::kClosedWorld;
      for (std::size_t u = 0; u <= premises.size(); ++u) {
        const Rendered& r = u < premises.size() ? premises[u] : query;
        for (std::size_t k = 0; k < r.spans.size(); ++k) {
          p.gold_concepts.emplace(Span{u, r.spans[k].first, r.spans[k].second}, r.concepts[k]);
        }
        if (u < premises.size()) {
          p.sentences.push_back(MakeSentence(r.text, hints));
        } else {
          p.question = MakeSentence(r.text, hints);
        }
      }
      p.answer = d.label ? "True" : "False";
      p.gold_logic = gold;
      problems.push_back(std::move(p));
      break;
    }
  }
  return problems;
}

}  // namespace symdrift::synth

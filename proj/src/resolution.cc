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

// Given-clause saturation with binary resolution, factoring and subsumption.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>

#include "symdrift/cnf.h"
#include "symdrift/error.h"
#include "symdrift/solver.h"

namespace symdrift::solver {

using fol::Clause;
using fol::CnfTerm;
using fol::Literal;

namespace {

using Substitution = std::map<std::uint32_t, CnfTerm>;

CnfTerm Resolve(CnfTerm t, const Substitution& s) {
  while (t.is_variable) {
    const auto it = s.find(t.variable);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool UnifyTerms(const CnfTerm& a, const CnfTerm& b, Substitution& s) {
  const CnfTerm x = Resolve(a, s);
  const CnfTerm y = Resolve(b, s);
  if (x == y) return true;
  if (x.is_variable) {
    s[x.variable] = y;
    return true;
  }
  if (y.is_variable) {
    s[y.variable] = x;
    return true;
  }
  return false;
}

bool UnifyArgs(const Literal& a, const Literal& b, Substitution& s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!UnifyTerms(a.args[i], b.args[i], s)) return false;
  }
  return true;
}

// One-way matching: binds only variables of `pattern`.
bool MatchArgs(const Literal& pattern, const Literal& target, Substitution& s) {
  if (pattern.predicate != target.predicate || pattern.positive != target.positive ||
      pattern.args.size() != target.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const CnfTerm& p = pattern.args[i];
    const CnfTerm& t = target.args[i];
    if (!p.is_variable) {
      if (p != t) return false;
      continue;
    }
    const auto [it, inserted] = s.emplace(p.variable, t);
    if (!inserted && it->second != t) return false;
  }
  return true;
}

bool SubsumesFrom(const Clause& c, std::size_t i, const Clause& d, const Substitution& s) {
  if (i == c.size()) return true;
  for (const Literal& target : d) {
    Substitution next = s;
    if (MatchArgs(c[i], target, next) && SubsumesFrom(c, i + 1, d, next)) return true;
  }
  return false;
}

bool Subsumes(const Clause& c, const Clause& d) {
  return c.size() <= d.size() && SubsumesFrom(c, 0, d, {});
}

class Prover {
 public:
  Prover(std::vector<Clause> input, std::size_t max_steps) : max_steps_(max_steps) {
    for (Clause& c : input) Enqueue(std::move(c), {});
  }

  // True when the empty clause is derived.
  bool Refute() {
    if (refuted_) return true;
    while (!passive_.empty()) {
      if (steps_ >= max_steps_) {
        limit_hit_ = true;
        return false;
      }
      const std::size_t index = passive_.top().second;
      passive_.pop();
      Clause given = std::move(store_[index]);
      ++steps_;
      if (Redundant(given)) continue;
      std::erase_if(active_, [&](const Clause& a) { return Subsumes(given, a); });
      active_.push_back(given);
      const Clause& g = active_.back();
      Factor(g);
      for (std::size_t a = 0; a < active_.size() && !refuted_; ++a) {
        ResolvePair(g, active_[a]);
      }
      if (refuted_) return true;
    }
    return false;
  }

  std::size_t steps() const { return steps_; }
  bool limit_hit() const { return limit_hit_; }

 private:
  using Key = std::pair<std::size_t, std::size_t>;  // (size, age)

  bool Redundant(const Clause& c) const {
    return std::any_of(active_.begin(), active_.end(),
                       [&](const Clause& a) { return Subsumes(a, c); });
  }

  // Applies `s`, renames variables apart, drops duplicates and tautologies.
  void Enqueue(Clause c, const Substitution& s) {
    std::map<std::uint32_t, std::uint32_t> rename;
    for (Literal& l : c) {
      for (CnfTerm& t : l.args) {
        t = Resolve(t, s);
        if (!t.is_variable) continue;
        auto [it, inserted] = rename.emplace(t.variable, next_variable_);
        if (inserted) ++next_variable_;
        t.variable = it->second;
      }
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (c[i].predicate == c[i + 1].predicate && c[i].args == c[i + 1].args &&
          c[i].positive != c[i + 1].positive) {
        return;
      }
    }
    if (c.empty()) {
      refuted_ = true;
      return;
    }
    if (Redundant(c)) return;
    passive_.emplace(Key{c.size(), store_.size()}, store_.size());
    store_.push_back(std::move(c));
  }

  void Factor(const Clause& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (c[i].positive != c[j].positive) continue;
        Substitution s;
        if (UnifyArgs(c[i], c[j], s)) Enqueue(c, s);
      }
    }
  }

  void ResolvePair(const Clause& a, const Clause& b_in) {
    // Rename b apart from a; the self-resolution case needs this too.
    Clause b = b_in;
    std::map<std::uint32_t, std::uint32_t> rename;
    for (Literal& l : b) {
      for (CnfTerm& t : l.args) {
        if (!t.is_variable) continue;
        auto [it, inserted] = rename.emplace(t.variable, next_variable_);
        if (inserted) ++next_variable_;
        t.variable = it->second;
      }
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (a[i].positive == b[j].positive) continue;
        Substitution s;
        if (!UnifyArgs(a[i], b[j], s)) continue;
        Clause resolvent;
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (k != i) resolvent.push_back(a[k]);
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
          if (k != j) resolvent.push_back(b[k]);
        }
        Enqueue(std::move(resolvent), s);
        if (refuted_) return;
      }
    }
  }

  std::size_t max_steps_;
  std::size_t steps_ = 0;
  bool limit_hit_ = false;
  bool refuted_ = false;
  std::uint32_t next_variable_ = 0;
  std::vector<Clause> store_;
  std::priority_queue<std::pair<Key, std::size_t>, std::vector<std::pair<Key, std::size_t>>,
                      std::greater<>>
      passive_;
  std::vector<Clause> active_;
};

struct Attempt {
  bool refuted = false;
  std::size_t steps = 0;
  bool limit_hit = false;
};

Attempt RefuteWith(const fol::LogicProgram& program, const fol::Formula& goal,
                   std::size_t max_steps) {
  fol::SymbolRegistry registry = program.registry;
  std::vector<fol::Formula> formulas = program.premises;
  formulas.push_back(goal);
  Prover prover(fol::ToCnf(formulas, registry).clauses, max_steps);
  Attempt out;
  out.refuted = prover.Refute();
  out.steps = prover.steps();
  out.limit_hit = prover.limit_hit();
  return out;
}

}  // namespace

Verdict ProveResolution(const fol::LogicProgram& program, std::size_t max_steps) {
  if (!program.query) throw Error(ErrorCode::kInvalidArgument, "program has no query");
  fol::ValidateProgram(program);
  Verdict verdict;
  const Attempt entail = RefuteWith(program, fol::Formula::Not(*program.query), max_steps);
  verdict.steps = entail.steps;
  if (entail.refuted) {
    verdict.value = Outcome::kProved;
    return verdict;
  }
  const Attempt refute = RefuteWith(program, *program.query, max_steps);
  verdict.steps += refute.steps;
  if (refute.refuted) {
    verdict.value = Outcome::kDisproved;
    return verdict;
  }
  verdict.value = Outcome::kUnknown;
  verdict.limit_hit = entail.limit_hit || refute.limit_hit;
  return verdict;
}

}  // namespace symdrift::solver

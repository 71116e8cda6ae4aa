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

// Closed-world forward chaining and shared solver helpers.

#include <map>

#include "symdrift/error.h"
#include "symdrift/solver.h"

namespace symdrift::solver {

using fol::Formula;
using fol::SymbolId;
using fol::Term;

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kProved:
      return "proved";
    case Outcome::kDisproved:
      return "disproved";
    case Outcome::kUnknown:
      return "unknown";
    case Outcome::kTrue:
      return "true";
    case Outcome::kFalse:
      return "false";
    case Outcome::kOption:
      return "option";
  }
  return "?";
}

namespace {

struct Rule {
  std::vector<const Formula*> body;
  const Formula* head = nullptr;
};

void CollectConjuncts(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind() == Formula::Kind::kAnd) {
    CollectConjuncts(f.left(), out);
    CollectConjuncts(f.right(), out);
  } else {
    out.push_back(&f);
  }
}

using Binding = std::map<std::string, SymbolId>;

class Chainer {
 public:
  explicit Chainer(const fol::LogicProgram& program)
      : constants_(program.registry.Symbols(fol::SymbolKind::kConstant)) {
    for (const Formula& p : program.premises) {
      if (!fol::IsHornPremise(p)) {
        throw Error(ErrorCode::kNotHorn, fol::RenderFormula(p, program.registry));
      }
      const Formula* core = &p;
      while (core->kind() == Formula::Kind::kForAll) core = &core->body();
      Rule rule;
      if (core->is_atom()) {
        rule.head = core;
      } else {
        CollectConjuncts(core->left(), rule.body);
        rule.head = &core->right();
      }
      rules_.push_back(std::move(rule));
    }
  }

  Saturation Run() {
    Saturation out;
    for (std::size_t round = 0;; ++round) {
      std::vector<GroundAtom> fresh;
      for (const Rule& rule : rules_) {
        Binding binding;
        Join(rule, 0, binding, out, fresh);
      }
      bool changed = false;
      for (GroundAtom& atom : fresh) {
        changed |= out.depth.emplace(std::move(atom), round).second;
      }
      if (!changed) break;
      out.rounds = round + 1;
    }
    return out;
  }

 private:
  // Binds body atoms left to right against the atoms known before this round.
  void Join(const Rule& rule, std::size_t i, Binding& binding, const Saturation& known,
            std::vector<GroundAtom>& fresh) {
    if (i == rule.body.size()) {
      EmitHead(*rule.head, 0, binding, known, fresh);
      return;
    }
    const Formula& atom = *rule.body[i];
    for (const auto& [ground, depth] : known.depth) {
      if (ground.first != atom.predicate()) continue;
      Binding next = binding;
      if (Match(atom.args(), ground.second, next)) Join(rule, i + 1, next, known, fresh);
    }
  }

  static bool Match(const std::vector<Term>& args, const std::vector<SymbolId>& values,
                    Binding& binding) {
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (!args[k].is_variable()) {
        if (args[k].constant() != values[k]) return false;
        continue;
      }
      const auto [it, inserted] = binding.emplace(args[k].variable(), values[k]);
      if (!inserted && it->second != values[k]) return false;
    }
    return true;
  }

  // Head variables absent from the body range over every constant.
  void EmitHead(const Formula& head, std::size_t k, Binding& binding, const Saturation& known,
                std::vector<GroundAtom>& fresh) {
    const auto& args = head.args();
    if (k == args.size()) {
      GroundAtom atom{head.predicate(), {}};
      for (const Term& t : args) {
        atom.second.push_back(t.is_variable() ? binding.at(t.variable()) : t.constant());
      }
      if (!known.Contains(atom)) fresh.push_back(std::move(atom));
      return;
    }
    if (!args[k].is_variable() || binding.count(args[k].variable())) {
      EmitHead(head, k + 1, binding, known, fresh);
      return;
    }
    for (SymbolId c : constants_) {
      binding[args[k].variable()] = c;
      EmitHead(head, k + 1, binding, known, fresh);
    }
    binding.erase(args[k].variable());
  }

  std::vector<SymbolId> constants_;
  std::vector<Rule> rules_;
};

GroundAtom Ground(const Formula& atom) {
  GroundAtom out{atom.predicate(), {}};
  for (const Term& t : atom.args()) out.second.push_back(t.constant());
  return out;
}

}  // namespace

Saturation Saturate(const fol::LogicProgram& program) { return Chainer(program).Run(); }

Verdict ForwardChainCwa(const fol::LogicProgram& program) {
  if (!program.query) throw Error(ErrorCode::kInvalidArgument, "program has no query");
  fol::LogicProgram closed = program;
  closed.semantics = fol::Semantics::kClosedWorld;
  fol::ValidateProgram(closed);
  const Saturation saturation = Saturate(program);

  std::vector<const Formula*> literals;
  CollectConjuncts(*program.query, literals);
  bool holds = true;
  for (const Formula* l : literals) {
    const bool negative = l->kind() == Formula::Kind::kNot;
    const bool present = saturation.Contains(Ground(negative ? l->operand() : *l));
    if (present == negative) {
      holds = false;
      break;
    }
  }
  Verdict verdict;
  verdict.value = holds ? Outcome::kTrue : Outcome::kFalse;
  verdict.steps = saturation.depth.size();
  return verdict;
}

}  // namespace symdrift::solver

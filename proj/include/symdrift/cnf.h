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

// Clause-form conversion for the function-free fragment.

#ifndef SYMDRIFT_CNF_H_
#define SYMDRIFT_CNF_H_

#include <cstdint>
#include <string>
#include <vector>

#include "symdrift/fol.h"

namespace symdrift::fol {

struct CnfTerm {
  bool is_variable = false;
  std::uint32_t variable = 0;
  SymbolId constant;

  static CnfTerm Var(std::uint32_t v) { return {true, v, {}}; }
  static CnfTerm Const(SymbolId c) { return {false, 0, c}; }

  auto operator<=>(const CnfTerm&) const = default;
};

struct Literal {
  bool positive = true;
  SymbolId predicate;
  std::vector<CnfTerm> args;

  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct ClauseSet {
  std::vector<Clause> clauses;
  // Fresh constants introduced for top-level existentials, in creation order.
  std::vector<SymbolId> skolem_symbols;
};

// Converts closed formulas to an equisatisfiable clause set. Existentials not
// under a universal become fresh constants sk0, sk1, ... registered in
// `registry`; an existential under a universal throws
// kUnsupportedSkolemFunction. Every clause gets its own variables.
ClauseSet ToCnf(const std::vector<Formula>& formulas, SymbolRegistry& registry);
ClauseSet ToCnf(const Formula& formula, SymbolRegistry& registry);

// "{~Kind(x0), Smart(x0)}" style rendering, for diagnostics and tests.
std::string RenderClause(const Clause& clause, const SymbolRegistry& registry);

}  // namespace symdrift::fol

#endif  // SYMDRIFT_CNF_H_

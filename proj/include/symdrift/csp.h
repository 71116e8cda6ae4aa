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

// Ordering puzzles: n distinct objects placed on positions 1..n.
//
// Text form (one item per line, '#' comments allowed):
//   Objects: Ana, Bo, Cy
//   Constraints:
//   LeftOf(Ana, Bo)
//   Adjacent(Bo, Cy)
//   Options:
//   AtPosition(Ana, 1)
//   AtPosition(Bo, 1) & NotAtPosition(Cy, 3)

#ifndef SYMDRIFT_CSP_H_
#define SYMDRIFT_CSP_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "symdrift/solver.h"

namespace symdrift::solver {

enum class RelationKind { kLeftOf, kRightOf, kAtPosition, kAdjacent, kNotAtPosition };

std::string_view RelationName(RelationKind kind);

struct CspConstraint {
  RelationKind kind = RelationKind::kLeftOf;
  std::string first;
  std::string second;        // binary relations
  std::size_t position = 0;  // AtPosition / NotAtPosition, 1-based

  bool operator==(const CspConstraint&) const = default;
};

struct CspSpec {
  std::vector<std::string> objects;
  std::vector<CspConstraint> constraints;
};

// An option holds when all of its constraints hold.
using CspOption = std::vector<CspConstraint>;

struct CspProblem {
  CspSpec spec;
  std::vector<CspOption> options;
};

inline constexpr std::size_t kMaxCspObjects = 8;

// positions[i] is the 1-based position of spec.objects[i].
using Placement = std::vector<std::size_t>;

bool Holds(const CspConstraint& c, const CspSpec& spec, const Placement& positions);

// Every placement satisfying the constraints, in lexicographic order.
// `nodes`, when given, receives the number of search nodes visited.
std::vector<Placement> SolveAll(const CspSpec& spec, std::size_t* nodes = nullptr);

// Picks the unique option that holds in every solution. Throws kUnsatisfiable,
// kAmbiguousOptions, kNoOptionEntailed, kUndefinedObject (unknown name or
// position out of range) and kDomainTooLarge beyond kMaxCspObjects.
Verdict SolveCsp(const CspSpec& spec, const std::vector<CspOption>& options);

std::string RenderConstraint(const CspConstraint& c);
CspConstraint ParseConstraint(std::string_view text);

std::string RenderCspProblem(const CspProblem& problem);
CspProblem ParseCspProblem(std::string_view text);

}  // namespace symdrift::solver

#endif  // SYMDRIFT_CSP_H_

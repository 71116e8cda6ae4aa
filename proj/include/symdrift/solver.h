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

// Desk-scale deciders for logic programs:
//
//   EnumerateModels   exhaustive model enumeration; the reference oracle
//   ProveResolution   given-clause resolution (open world)
//   ForwardChainCwa   Horn saturation with negation as failure (closed world)
//
// The finite-domain ordering solver lives in csp.h and the Prover9 adapter in
// prover9.h.

#ifndef SYMDRIFT_SOLVER_H_
#define SYMDRIFT_SOLVER_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdrift/fol.h"

namespace symdrift::solver {

enum class Outcome {
  kProved,     // open world: entailed
  kDisproved,  // open world: negation entailed
  kUnknown,    // open world only
  kTrue,       // closed world
  kFalse,      // closed world
  kOption,     // csp: Verdict::option holds
};

std::string_view OutcomeName(Outcome outcome);

struct Verdict {
  Outcome value = Outcome::kUnknown;
  std::size_t option = 0;
  std::size_t steps = 0;
  bool limit_hit = false;

  bool operator==(const Verdict&) const = default;
};

inline constexpr std::size_t kDefaultMaxSteps = 10000;

// Largest number of ground atoms EnumerateModels will search over.
inline constexpr std::size_t kMaxEnumerationBits = 64;

// Decides the query by searching every interpretation over a finite domain:
// the program's constants, `extra_constants`, and one anonymous witness per
// existential quantifier (counted after pushing negations inward). Proved
// when no model of the premises falsifies the query, Disproved when none
// satisfies it. For the fragment ToCnf accepts the domain is large enough to
// be exact. Throws kDomainTooLarge beyond kMaxEnumerationBits ground atoms.
Verdict EnumerateModels(const fol::LogicProgram& program,
                        std::span<const std::string> extra_constants = {});

Verdict ProveResolution(const fol::LogicProgram& program,
                        std::size_t max_steps = kDefaultMaxSteps);

using GroundAtom = std::pair<fol::SymbolId, std::vector<fol::SymbolId>>;

// Least fixed point of a closed-world Horn program. `depth` holds the
// derivation height of every atom: 0 for facts, 1 + max over the body for
// derived atoms.
struct Saturation {
  std::map<GroundAtom, std::size_t> depth;
  std::size_t rounds = 0;

  bool Contains(const GroundAtom& atom) const { return depth.count(atom) != 0; }
};

Saturation Saturate(const fol::LogicProgram& program);

// True iff every positive query literal is derivable and no negative one is.
// Throws kNotHorn for premises outside the Horn fragment.
Verdict ForwardChainCwa(const fol::LogicProgram& program);

}  // namespace symdrift::solver

#endif  // SYMDRIFT_SOLVER_H_

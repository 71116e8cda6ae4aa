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

// Closed-world rule-base problems in the style of multi-hop attribute
// reasoning: facts "Anne is kind.", rules "All kind people are smart." and a
// yes/no question whose answer needs an exact number of rule applications.

#ifndef SYMDRIFT_SYNTHETIC_H_
#define SYMDRIFT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symdrift/problem.h"

namespace symdrift::synth {

struct SyntheticConfig {
  std::size_t n_problems = 200;
  std::size_t depth = 5;         // problems cycle through depths 1..depth
  std::size_t n_constants = 3;   // person names per problem
  std::size_t n_predicates = 8;  // attributes per problem, at least depth + 2
  std::size_t rule_branching = 2;  // largest rule body
  double negation_rate = 0.2;      // share of negated questions
  std::uint64_t seed = 7;
};

// Throws kInvalidArgument when a count is zero, depth exceeds 5, or the
// predicate pool is too small for the requested depth.
void ValidateConfig(const SyntheticConfig& config);

// Attribute adjectives the generator draws from; every one has synonyms in
// the bundled lexicon.
const std::vector<std::string>& AttributePool();
const std::vector<std::string>& NamePool();

// Deterministic in the config. Labels alternate True/False; every True
// positive query is derivable at exactly its stated depth (checked with the
// saturation depth counter), and each gold label is re-checked against
// forward chaining.
std::vector<Problem> GenerateSynthetic(const SyntheticConfig& config,
                                       const text::PosHints* hints = nullptr);

// Depth of the problem's reasoning chain, recovered from its id suffix.
std::size_t DepthOf(const Problem& p);

}  // namespace symdrift::synth

#endif  // SYMDRIFT_SYNTHETIC_H_

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

// Prover9 input emission and a subprocess adapter for an external prover.

#ifndef SYMDRIFT_PROVER9_H_
#define SYMDRIFT_PROVER9_H_

#include <string>
#include <string_view>

#include "symdrift/fol.h"
#include "symdrift/solver.h"

namespace symdrift::solver {

// formulas(assumptions). ... end_of_list.  formulas(goals). ... end_of_list.
std::string EmitProver9(const fol::LogicProgram& program);

// Reads text produced by EmitProver9 (or hand-written input in the same
// subset) back into an open-world program: '-' negation, trailing '.', and
// the "c_" constant prefix are normalized away.
fol::LogicProgram ParseProver9Input(std::string_view text);

// Runs `binary -f <file>` on the program, then on the negated goal.
// Output containing "THEOREM PROVED" decides the attempt. Exceeding
// `timeout_s` on either run yields Unknown with limit_hit. Throws
// kExternalUnavailable when the binary cannot be executed.
Verdict RunExternalProver(const fol::LogicProgram& program, const std::string& binary_path,
                          double timeout_s);

// First "prover9" found on PATH, or empty.
std::string FindProver9();

}  // namespace symdrift::solver

#endif  // SYMDRIFT_PROVER9_H_

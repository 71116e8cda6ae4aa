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

#include "symdrift/error.h"

namespace symdrift {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
      return "syntax";
    case ErrorCode::kArityMismatch:
      return "arity_mismatch";
    case ErrorCode::kUnknownSymbol:
      return "unknown_symbol";
    case ErrorCode::kNameCollision:
      return "name_collision";
    case ErrorCode::kNonUnaryCompound:
      return "non_unary_compound";
    case ErrorCode::kUnsupportedSkolemFunction:
      return "unsupported_skolem_function";
    case ErrorCode::kTypeError:
      return "type_error";
    case ErrorCode::kDomainTooLarge:
      return "domain_too_large";
    case ErrorCode::kNotHorn:
      return "not_horn";
    case ErrorCode::kUnsatisfiable:
      return "unsatisfiable";
    case ErrorCode::kAmbiguousOptions:
      return "ambiguous_options";
    case ErrorCode::kNoOptionEntailed:
      return "no_option_entailed";
    case ErrorCode::kUndefinedObject:
      return "undefined_object";
    case ErrorCode::kExternalUnavailable:
      return "external_unavailable";
    case ErrorCode::kTimeout:
      return "timeout";
    case ErrorCode::kResourceMissing:
      return "resource_missing";
    case ErrorCode::kScorerUnavailable:
      return "scorer_unavailable";
    case ErrorCode::kNoApplicableSite:
      return "no_applicable_site";
    case ErrorCode::kOracleFailure:
      return "oracle_failure";
    case ErrorCode::kTranslationFailure:
      return "translation_failure";
    case ErrorCode::kEmptyConceptSet:
      return "empty_concept_set";
    case ErrorCode::kPairingMismatch:
      return "pairing_mismatch";
    case ErrorCode::kFormatError:
      return "format_error";
    case ErrorCode::kMissingGold:
      return "missing_gold";
    case ErrorCode::kClientError:
      return "client_error";
    case ErrorCode::kEmptyDataset:
      return "empty_dataset";
    case ErrorCode::kNoTraces:
      return "no_traces";
    case ErrorCode::kSolverMismatch:
      return "solver_mismatch";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kAlignmentIncomplete:
      return "alignment_incomplete";
  }
  return "unknown_error";
}

}  // namespace symdrift

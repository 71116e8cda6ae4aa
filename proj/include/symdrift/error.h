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

// Error type shared by every module. Callers switch on code(); the message is
// for humans.

#ifndef SYMDRIFT_ERROR_H_
#define SYMDRIFT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symdrift {

enum class ErrorCode {
  kSyntax,
  kArityMismatch,
  kUnknownSymbol,
  kNameCollision,
  kNonUnaryCompound,
  kUnsupportedSkolemFunction,
  kTypeError,
  kDomainTooLarge,
  kNotHorn,
  kUnsatisfiable,
  kAmbiguousOptions,
  kNoOptionEntailed,
  kUndefinedObject,
  kExternalUnavailable,
  kTimeout,
  kResourceMissing,
  kScorerUnavailable,
  kNoApplicableSite,
  kOracleFailure,
  kTranslationFailure,
  kEmptyConceptSet,
  kPairingMismatch,
  kFormatError,
  kMissingGold,
  kClientError,
  kEmptyDataset,
  kNoTraces,
  kSolverMismatch,
  kInvalidArgument,
  kIo,
  kAlignmentIncomplete,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected, const std::string& found)
      : Error(ErrorCode::kSyntax, "at " + std::to_string(position) + ": expected " + expected +
                                      ", found " + found),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(const std::string& symbol, std::size_t expected, std::size_t got)
      : Error(ErrorCode::kArityMismatch, symbol + " declared with arity " + std::to_string(expected) +
                                             ", used with " + std::to_string(got)),
        symbol_(symbol),
        expected_(expected),
        got_(got) {}

  const std::string& symbol() const noexcept { return symbol_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::string symbol_;
  std::size_t expected_;
  std::size_t got_;
};

// Errors that originate from a malformed dataset line.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kFormatError, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace symdrift

#endif  // SYMDRIFT_ERROR_H_

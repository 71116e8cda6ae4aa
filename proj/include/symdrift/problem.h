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

// Reasoning problems as handled by diversification, translation and
// evaluation, plus the JSONL dataset format.
//
// One JSON object per line:
//   {"id": "p1", "task_kind": "closed-world",
//    "sentences": ["Anne is kind.", "All kind people are smart."],
//    "question": "Anne is smart.", "options": [], "answer": "True",
//    "gold_logic": "Mode: closed-world\nPremises:\n...",
//    "gold_concepts": [{"unit": 0, "begin": 9, "end": 13, "concept": "Kind"}],
//    "base_id": "...", "provenance": {...}}
// Units are the sentences followed by the question (unit index n).

#ifndef SYMDRIFT_PROBLEM_H_
#define SYMDRIFT_PROBLEM_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdrift/text.h"

namespace symdrift {

enum class TaskKind { kOpenWorld, kClosedWorld, kCsp };

std::string_view TaskKindName(TaskKind kind);
TaskKind ParseTaskKind(std::string_view name);

// Half-open byte range [begin, end) inside one unit.
struct Span {
  std::size_t unit = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  auto operator<=>(const Span&) const = default;
  bool Overlaps(const Span& o) const { return unit == o.unit && begin < o.end && o.begin < end; }
};

struct Sentence {
  std::string text;
  std::vector<text::Token> tokens;
};

Sentence MakeSentence(std::string text, const text::PosHints* hints = nullptr);

// One occurrence of a concept in a diversified problem.
struct ProvenanceEntry {
  Span span;            // in the rewritten text
  std::string surface;  // exactly the text at `span`
  Span source;          // where the occurrence sat in the base problem
  bool operator==(const ProvenanceEntry&) const = default;
};

struct Problem {
  std::string id;
  TaskKind task_kind = TaskKind::kOpenWorld;
  std::vector<Sentence> sentences;
  Sentence question;
  std::vector<std::string> options;
  std::string answer;  // True | False | Unknown, or an option letter A, B, ...
  std::optional<std::string> gold_logic;  // program text (CSP text for csp tasks)
  std::map<Span, std::string> gold_concepts;  // occurrence -> gold concept symbol

  // Set on diversified problems.
  std::string base_id;
  std::map<std::string, std::vector<ProvenanceEntry>> provenance;

  std::size_t unit_count() const { return sentences.size() + 1; }
  const Sentence& unit(std::size_t i) const { return i < sentences.size() ? sentences[i] : question; }
  Sentence& unit(std::size_t i) { return i < sentences.size() ? sentences[i] : question; }
  std::string_view SpanText(const Span& s) const;

  // The problem rendered as plain text: sentences, then the question and any
  // lettered options.
  std::string Text() const;
};

// Checks span and label invariants; throws kFormatError.
void ValidateProblem(const Problem& p);

std::string OptionLetter(std::size_t index);
std::optional<std::size_t> OptionIndex(std::string_view letter);

std::string ProblemToJson(const Problem& p);
// `line` is used for error messages only.
Problem ProblemFromJson(std::string_view json_line, std::size_t line,
                        const text::PosHints* hints = nullptr);

// Throws FormatError (with line number) on malformed lines and kIo when the
// file cannot be read.
std::vector<Problem> LoadDataset(const std::filesystem::path& path,
                                 const text::PosHints* hints = nullptr);
void SaveDataset(const std::filesystem::path& path, const std::vector<Problem>& problems);

}  // namespace symdrift

#endif  // SYMDRIFT_PROBLEM_H_

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

// Deterministic English text processing: tokenization with character spans,
// a rule-based lemmatizer, and a closed-class POS tagger.

#ifndef SYMDRIFT_TEXT_H_
#define SYMDRIFT_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdrift::text {

enum class Pos {
  kNoun,
  kPropn,
  kVerb,
  kAdj,
  kAdv,
  kDet,
  kPron,
  kAdp,
  kAux,
  kCconj,
  kSconj,
  kPart,
  kNum,
  kPunct,
  kOther,
};

std::string_view PosName(Pos pos);  // "NOUN", "ADJ", ...
std::optional<Pos> ParsePos(std::string_view name);

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kOther;
  std::size_t begin = 0;  // byte offsets into the sentence, [begin, end)
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Open-class knowledge the tagger may consult (typically the synonym lexicon).
class PosHints {
 public:
  virtual ~PosHints() = default;
  virtual std::optional<Pos> PosOf(std::string_view lemma) const = 0;
};

std::vector<Token> Tokenize(std::string_view sentence, const PosHints* hints = nullptr);

// Base form of a lower-cased word with the given part of speech.
std::string Lemmatize(std::string_view word, Pos pos);

// Plural of a noun lemma ("person" -> "people", "city" -> "cities").
std::string Pluralize(std::string_view noun);

// Function words and generic nouns that never anchor a concept.
bool IsStopword(std::string_view lemma);

bool IsContentToken(const Token& t);

std::string ToLower(std::string_view s);
std::string Capitalize(std::string_view s);

// "popular show" -> "PopularShow"; non-alphanumerics dropped.
std::string CamelCase(const std::vector<std::string>& words);

// Inverse of CamelCase: "PopularShow" -> {"popular", "show"}.
std::vector<std::string> SplitCamelCase(std::string_view name);

std::vector<std::string> SplitWords(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace symdrift::text

#endif  // SYMDRIFT_TEXT_H_

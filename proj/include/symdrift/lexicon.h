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

// Lexical resources: synonym groups with hypernyms, a phrase paraphrase table,
// and a part-of-speech derivation table. All are tab-separated text files.

#ifndef SYMDRIFT_LEXICON_H_
#define SYMDRIFT_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdrift/text.h"

namespace symdrift::lex {

// Rows: lemma<TAB>pos<TAB>syn1,syn2,...<TAB>hypernym(optional).
// Synonymy is closed transitively, so groups partition the lemmas.
class SynonymLexicon : public text::PosHints {
 public:
  static SynonymLexicon Load(const std::filesystem::path& path);
  static SynonymLexicon Parse(std::string_view tsv);

  void Add(std::string_view lemma, text::Pos pos, const std::vector<std::string>& synonyms,
           std::string_view hypernym = "");

  // Synonyms listed for (lemma, pos), in file order, without the lemma itself.
  std::vector<std::string> Synonyms(std::string_view lemma, text::Pos pos) const;

  // Canonical member of the lemma's group; the lemma itself when unlisted.
  std::string GroupOf(std::string_view lemma) const;
  bool SameGroup(std::string_view a, std::string_view b) const { return GroupOf(a) == GroupOf(b); }

  std::optional<std::string> Hypernym(std::string_view lemma) const;
  std::optional<text::Pos> PosOf(std::string_view lemma) const override;

  bool empty() const { return rows_.empty(); }

 private:
  struct Row {
    text::Pos pos;
    std::vector<std::string> synonyms;
    std::string hypernym;
  };
  std::string Find(const std::string& x) const;

  std::multimap<std::string, Row, std::less<>> rows_;
  std::map<std::string, std::string, std::less<>> parent_;  // union-find, no compression: lookups stay read-only
  std::map<std::string, text::Pos, std::less<>> pos_;
};

struct Paraphrase {
  std::string phrase;
  std::string paraphrase;
  double score = 0;
};

// Rows: phrase<TAB>paraphrase<TAB>score. Phrases are matched case-insensitively.
class ParaphraseTable {
 public:
  static ParaphraseTable Load(const std::filesystem::path& path);
  static ParaphraseTable Parse(std::string_view tsv);

  // Paraphrases of `phrase`, best score first.
  std::vector<Paraphrase> Lookup(std::string_view phrase) const;
  const std::vector<Paraphrase>& entries() const { return entries_; }

 private:
  std::vector<Paraphrase> entries_;
};

// Rows: lemma<TAB>pos_from<TAB>pos_to<TAB>form. pos_to may be a fine tag such
// as VBN for participles.
class DerivationTable {
 public:
  static DerivationTable Load(const std::filesystem::path& path);
  static DerivationTable Parse(std::string_view tsv);

  std::optional<std::string> Derive(std::string_view lemma, std::string_view pos_from,
                                    std::string_view pos_to) const;
  // Reverse lookup: the lemma whose derived form is `form`.
  std::optional<std::string> Base(std::string_view form, std::string_view pos_to) const;

 private:
  struct Row {
    std::string lemma, from, to, form;
  };
  std::vector<Row> rows_;
};

struct Resources {
  SynonymLexicon synonyms;
  ParaphraseTable paraphrases;
  DerivationTable derivations;
};

// Loads synonyms.tsv, paraphrases.tsv and derivations.tsv from `dir`. Throws
// kResourceMissing when the directory or a file is absent.
Resources LoadResources(const std::filesystem::path& dir);

// The lexicon directory shipped with the sources, overridable through the
// SYMDRIFT_LEXICON_DIR environment variable.
std::filesystem::path DefaultLexiconDir();

// Shared read-only instance of the default resources.
const Resources& DefaultResources();

}  // namespace symdrift::lex

#endif  // SYMDRIFT_LEXICON_H_

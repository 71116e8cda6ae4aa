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

#include "symdrift/lexicon.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::lex {

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kResourceMissing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(Trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// Data rows of a TSV file: comments ('#') and blank lines skipped. Each row is
// passed with its 1-based line number.
template <typename Fn>
void ForEachRow(std::string_view tsv, std::size_t min_fields, Fn fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line)[0] == '#') {
      if (end == tsv.size()) break;
      continue;
    }
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() < min_fields) {
      throw FormatError(line_no, "expected " + std::to_string(min_fields) + " tab-separated fields");
    }
    fn(fields, line_no);
    if (end == tsv.size()) break;
  }
}

}  // namespace

SynonymLexicon SynonymLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

SynonymLexicon SynonymLexicon::Parse(std::string_view tsv) {
  SynonymLexicon lex;
  ForEachRow(tsv, 3, [&](const std::vector<std::string>& f, std::size_t line) {
    const auto pos = text::ParsePos(f[1]);
    if (!pos) throw FormatError(line, "unknown part of speech '" + f[1] + "'");
    std::vector<std::string> syns;
    for (std::string& s : Split(f[2], ',')) {
      if (!s.empty()) syns.push_back(text::ToLower(s));
    }
    lex.Add(text::ToLower(f[0]), *pos, syns, f.size() > 3 ? f[3] : "");
  });
  return lex;
}

void SynonymLexicon::Add(std::string_view lemma, text::Pos pos,
                         const std::vector<std::string>& synonyms, std::string_view hypernym) {
  const std::string key(lemma);
  rows_.emplace(key, Row{pos, synonyms, std::string(hypernym)});
  pos_.emplace(key, pos);
  for (const std::string& s : synonyms) {
    pos_.emplace(s, pos);
    // Union: the lexicographically smaller root wins, so canonical members
    // do not depend on row order.
    const std::string a = Find(key), b = Find(s);
    if (a == b) continue;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }
}

std::string SynonymLexicon::Find(const std::string& x) const {
  std::string cur = x;
  for (auto it = parent_.find(cur); it != parent_.end() && it->second != cur; it = parent_.find(cur)) {
    cur = it->second;
  }
  return cur;
}

std::vector<std::string> SynonymLexicon::Synonyms(std::string_view lemma, text::Pos pos) const {
  std::vector<std::string> out;
  const auto [lo, hi] = rows_.equal_range(std::string(lemma));
  for (auto it = lo; it != hi; ++it) {
    if (it->second.pos != pos) continue;
    for (const std::string& s : it->second.synonyms) {
      if (s != lemma && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  // Rows listing this lemma as someone else's synonym contribute the head and
  // its other synonyms.
  if (out.empty()) {
    for (const auto& [head, row] : rows_) {
      if (row.pos != pos) continue;
      if (std::find(row.synonyms.begin(), row.synonyms.end(), lemma) == row.synonyms.end()) continue;
      if (std::find(out.begin(), out.end(), head) == out.end()) out.push_back(head);
      for (const std::string& s : row.synonyms) {
        if (s != lemma && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      }
    }
  }
  return out;
}

std::string SynonymLexicon::GroupOf(std::string_view lemma) const {
  return Find(text::ToLower(lemma));
}

std::optional<std::string> SynonymLexicon::Hypernym(std::string_view lemma) const {
  const auto [lo, hi] = rows_.equal_range(std::string(lemma));
  for (auto it = lo; it != hi; ++it) {
    if (!it->second.hypernym.empty()) return it->second.hypernym;
  }
  return std::nullopt;
}

std::optional<text::Pos> SynonymLexicon::PosOf(std::string_view lemma) const {
  const auto it = pos_.find(lemma);
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

ParaphraseTable ParaphraseTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

ParaphraseTable ParaphraseTable::Parse(std::string_view tsv) {
  ParaphraseTable table;
  ForEachRow(tsv, 3, [&](const std::vector<std::string>& f, std::size_t line) {
    Paraphrase p{text::ToLower(f[0]), f[1], 0};
    try {
      p.score = std::stod(f[2]);
    } catch (const std::exception&) {
      throw FormatError(line, "bad score '" + f[2] + "'");
    }
    table.entries_.push_back(std::move(p));
  });
  return table;
}

std::vector<Paraphrase> ParaphraseTable::Lookup(std::string_view phrase) const {
  const std::string key = text::ToLower(phrase);
  std::vector<Paraphrase> out;
  for (const Paraphrase& p : entries_) {
    if (p.phrase == key) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Paraphrase& a, const Paraphrase& b) { return a.score > b.score; });
  return out;
}

DerivationTable DerivationTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

DerivationTable DerivationTable::Parse(std::string_view tsv) {
  DerivationTable table;
  ForEachRow(tsv, 4, [&](const std::vector<std::string>& f, std::size_t) {
    table.rows_.push_back(Row{text::ToLower(f[0]), f[1], f[2], f[3]});
  });
  return table;
}

std::optional<std::string> DerivationTable::Derive(std::string_view lemma, std::string_view pos_from,
                                                   std::string_view pos_to) const {
  for (const Row& r : rows_) {
    if (r.lemma == lemma && r.from == pos_from && r.to == pos_to) return r.form;
  }
  return std::nullopt;
}

std::optional<std::string> DerivationTable::Base(std::string_view form,
                                                 std::string_view pos_to) const {
  for (const Row& r : rows_) {
    if (r.form == form && r.to == pos_to) return r.lemma;
  }
  return std::nullopt;
}

Resources LoadResources(const std::filesystem::path& dir) {
  if (dir.empty()) throw Error(ErrorCode::kResourceMissing, "lexicon directory is not set");
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kResourceMissing, "no lexicon directory at " + dir.string());
  }
  Resources r;
  r.synonyms = SynonymLexicon::Load(dir / "synonyms.tsv");
  r.paraphrases = ParaphraseTable::Load(dir / "paraphrases.tsv");
  r.derivations = DerivationTable::Load(dir / "derivations.tsv");
  return r;
}

std::filesystem::path DefaultLexiconDir() {
  if (const char* env = std::getenv("SYMDRIFT_LEXICON_DIR"); env && *env) return env;
  return std::filesystem::path(SYMDRIFT_DATA_DIR) / "lexicon";
}

const Resources& DefaultResources() {
  static const Resources* resources = new Resources(LoadResources(DefaultLexiconDir()));
  return *resources;
}

}  // namespace symdrift::lex

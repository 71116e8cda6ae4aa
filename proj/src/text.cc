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

#include "symdrift/text.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace symdrift::text {

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 15> kPosNames = {{
    {Pos::kNoun, "NOUN"},
    {Pos::kPropn, "PROPN"},
    {Pos::kVerb, "VERB"},
    {Pos::kAdj, "ADJ"},
    {Pos::kAdv, "ADV"},
    {Pos::kDet, "DET"},
    {Pos::kPron, "PRON"},
    {Pos::kAdp, "ADP"},
    {Pos::kAux, "AUX"},
    {Pos::kCconj, "CCONJ"},
    {Pos::kSconj, "SCONJ"},
    {Pos::kPart, "PART"},
    {Pos::kNum, "NUM"},
    {Pos::kPunct, "PUNCT"},
    {Pos::kOther, "X"},
}};

const std::map<std::string, Pos, std::less<>>& ClosedClass() {
  static const auto* table = [] {
    auto* t = new std::map<std::string, Pos, std::less<>>();
    auto add = [&](Pos pos, std::initializer_list<const char*> words) {
      for (const char* w : words) t->emplace(w, pos);
    };
    add(Pos::kDet, {"the", "a", "an", "all", "every", "each", "some", "no", "any", "this", "these",
                    "those"});
    add(Pos::kPron, {"he", "she", "it", "they", "them", "him", "her", "his", "its", "their",
                     "someone", "somebody", "something", "everyone", "everybody", "everything",
                     "anyone", "anything", "nobody", "nothing", "who", "which", "what", "i", "you",
                     "we", "that"});
    add(Pos::kAux, {"is", "are", "am", "was", "were", "be", "been", "being", "do", "does", "did",
                    "has", "have", "had", "can", "could", "will", "would", "shall", "should", "may",
                    "might", "must"});
    add(Pos::kCconj, {"and", "or", "but", "nor"});
    add(Pos::kSconj, {"if", "then", "because", "when", "while", "whether", "unless"});
    add(Pos::kAdp, {"of", "to", "in", "on", "at", "by", "with", "from", "for", "about", "than", "as",
                    "into", "over", "under", "between", "among"});
    add(Pos::kPart, {"not", "n't"});
    add(Pos::kAdv, {"also", "very", "too", "only", "just", "always", "never", "both", "either",
                    "neither"});
    return t;
  }();
  return *table;
}

const std::map<std::string, std::string, std::less<>>& IrregularLemmas() {
  static const auto* table = new std::map<std::string, std::string, std::less<>>{
      {"is", "be"},        {"are", "be"},     {"am", "be"},     {"was", "be"},
      {"were", "be"},      {"been", "be"},    {"being", "be"},  {"has", "have"},
      {"had", "have"},     {"does", "do"},    {"did", "do"},    {"n't", "not"},
      {"people", "person"}, {"children", "child"}, {"men", "man"}, {"women", "woman"},
      {"mice", "mouse"},   {"geese", "goose"}, {"feet", "foot"}, {"teeth", "tooth"},
      {"seen", "see"},     {"eaten", "eat"},  {"given", "give"}, {"taken", "take"},
      {"known", "know"},   {"written", "write"}, {"made", "make"}, {"held", "hold"},
      {"met", "meet"},     {"found", "find"}, {"told", "tell"}, {"bought", "buy"},
      {"caught", "catch"}, {"taught", "teach"}, {"visited", "visit"}, {"helped", "help"},
  };
  return *table;
}

const std::map<std::string, std::string, std::less<>>& IrregularPlurals() {
  static const auto* table = new std::map<std::string, std::string, std::less<>>{
      {"person", "people"}, {"child", "children"}, {"man", "men"},     {"woman", "women"},
      {"mouse", "mice"},    {"goose", "geese"},    {"foot", "feet"},   {"tooth", "teeth"},
  };
  return *table;
}

const std::set<std::string, std::less<>>& GenericNouns() {
  static const auto* set = new std::set<std::string, std::less<>>{
      "person", "thing", "someone", "something", "individual", "object", "one", "everyone",
      "everything", "anyone", "anything", "somebody", "everybody"};
  return *set;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Strips a plural or third-person "-s".
std::string StripS(std::string_view w) {
  if (w.size() <= 3 || EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is")) {
    return std::string(w);
  }
  if (EndsWith(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (EndsWith(w, "sses") || EndsWith(w, "xes") || EndsWith(w, "ches") || EndsWith(w, "shes") ||
      EndsWith(w, "zes")) {
    return std::string(w.substr(0, w.size() - 2));
  }
  if (EndsWith(w, "s")) return std::string(w.substr(0, w.size() - 1));
  return std::string(w);
}

std::string StripEd(std::string_view w) {
  if (w.size() <= 4 || !EndsWith(w, "ed")) return std::string(w);
  std::string stem(w.substr(0, w.size() - 2));
  if (EndsWith(stem, "i")) return stem.substr(0, stem.size() - 1) + "y";
  // Doubled final consonant: "stopped" -> "stop".
  if (stem.size() >= 3 && stem.back() == stem[stem.size() - 2] && !IsVowel(stem.back()) &&
      stem.back() != 'l' && stem.back() != 's') {
    return stem.substr(0, stem.size() - 1);
  }
  // "chased" -> "chase": consonant-vowel-consonant stems usually had an 'e'.
  if (stem.size() >= 3 && !IsVowel(stem.back()) && IsVowel(stem[stem.size() - 2]) &&
      !IsVowel(stem[stem.size() - 3]) && stem.back() != 'w' && stem.back() != 'x' &&
      stem.back() != 'y') {
    return stem + "e";
  }
  return stem;
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-';
}

Pos SuffixGuess(std::string_view w) {
  for (std::string_view s : {"ness", "tion", "sion", "ment", "ity", "ship", "hood", "ism"}) {
    if (EndsWith(w, s)) return Pos::kNoun;
  }
  for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic", "ent", "ant"}) {
    if (EndsWith(w, s)) return Pos::kAdj;
  }
  if (EndsWith(w, "ly")) return Pos::kAdv;
  return Pos::kOther;
}

}  // namespace

std::string_view PosName(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "X";
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  if (name == "ADJECTIVE") return Pos::kAdj;
  return std::nullopt;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string Lemmatize(std::string_view word, Pos pos) {
  const std::string w = ToLower(word);
  if (pos == Pos::kPropn) return std::string(word);
  if (const auto it = IrregularLemmas().find(w); it != IrregularLemmas().end()) return it->second;
  switch (pos) {
    case Pos::kNoun:
      return StripS(w);
    case Pos::kVerb: {
      if (EndsWith(w, "ed")) return StripEd(w);
      return StripS(w);
    }
    default:
      return w;
  }
}

std::string Pluralize(std::string_view noun) {
  const std::string n = ToLower(noun);
  if (const auto it = IrregularPlurals().find(n); it != IrregularPlurals().end()) return it->second;
  if (EndsWith(n, "y") && n.size() > 1 && !IsVowel(n[n.size() - 2])) {
    return n.substr(0, n.size() - 1) + "ies";
  }
  if (EndsWith(n, "s") || EndsWith(n, "x") || EndsWith(n, "ch") || EndsWith(n, "sh") ||
      EndsWith(n, "z")) {
    return n + "es";
  }
  return n + "s";
}

bool IsStopword(std::string_view lemma) {
  const std::string l = ToLower(lemma);
  if (l == "be" || l == "have" || l == "do") return true;
  if (GenericNouns().count(l)) return true;
  return ClosedClass().count(l) != 0;
}

bool IsContentToken(const Token& t) { return t.pos != Pos::kPunct && t.pos != Pos::kDet; }

std::vector<Token> Tokenize(std::string_view s, const PosHints* hints) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.begin = i;
    if (IsWordChar(c) && c != '\'' && c != '-') {
      std::size_t j = i;
      while (j < s.size() && IsWordChar(s[j])) ++j;
      // Trailing apostrophes and hyphens belong to punctuation.
      while (j > i + 1 && (s[j - 1] == '\'' || s[j - 1] == '-')) --j;
      std::string_view word = s.substr(i, j - i);
      // Split clitics: "isn't" -> "is" "n't", "Anne's" -> "Anne" "'s".
      if (EndsWith(ToLower(word), "n't") && word.size() > 3) {
        j -= 3;
      } else if (EndsWith(ToLower(word), "'s") && word.size() > 2) {
        j -= 2;
      }
      t.end = j;
    } else if (c == '\'' && i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      t.end = j;
    } else if (c == 'n' && i + 2 < s.size() && s.substr(i, 3) == "n't") {
      t.end = i + 3;
    } else {
      t.end = i + 1;
    }
    t.surface = std::string(s.substr(t.begin, t.end - t.begin));
    tokens.push_back(std::move(t));
    i = tokens.back().end;
  }

  // Tagging: closed class, then hints, then suffix and context rules.
  std::vector<bool> decided(tokens.size(), false);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    Token& t = tokens[k];
    const std::string lower = ToLower(t.surface);
    const bool alpha = std::isalpha(static_cast<unsigned char>(t.surface[0]));
    const bool digit = std::isdigit(static_cast<unsigned char>(t.surface[0]));
    if (!alpha && !digit && t.surface[0] != '\'' && lower != "n't") {
      t.pos = Pos::kPunct;
    } else if (digit) {
      t.pos = Pos::kNum;
    } else if (lower == "'s") {
      t.pos = Pos::kPart;
    } else if (lower == "n't") {
      t.pos = Pos::kPart;
    } else if (const auto it = ClosedClass().find(lower); it != ClosedClass().end()) {
      t.pos = it->second;
    } else if (lower == "people" || lower == "person" || lower == "thing" || lower == "things") {
      t.pos = Pos::kNoun;
    } else {
      continue;
    }
    decided[k] = true;
  }
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (decided[k]) continue;
    Token& t = tokens[k];
    const std::string lower = ToLower(t.surface);
    const bool capital = std::isupper(static_cast<unsigned char>(t.surface[0]));
    const bool initial = k == 0 || tokens[k - 1].pos == Pos::kPunct;
    std::optional<Pos> hinted;
    if (hints) {
      hinted = hints->PosOf(lower);
      if (!hinted) {
        const std::string s = StripS(lower);
        if (s != lower) {
          if (auto h = hints->PosOf(s); h && (*h == Pos::kNoun || *h == Pos::kVerb)) hinted = h;
        }
      }
      if (!hinted && EndsWith(lower, "ed")) {
        if (auto h = hints->PosOf(StripEd(lower)); h && *h == Pos::kVerb) hinted = h;
      }
    }
    if (capital && !(initial && hinted)) {
      t.pos = Pos::kPropn;
    } else if (hinted) {
      t.pos = *hinted;
    } else {
      const Pos guess = SuffixGuess(lower);
      const Pos prev = k > 0 ? tokens[k - 1].pos : Pos::kPunct;
      const bool next_nominal =
          k + 1 < tokens.size() && (tokens[k + 1].pos == Pos::kNoun || !decided[k + 1]);
      if (guess != Pos::kOther) {
        t.pos = guess;
      } else if (prev == Pos::kAux || prev == Pos::kPart || prev == Pos::kAdv) {
        t.pos = Pos::kAdj;
      } else if ((prev == Pos::kPropn || prev == Pos::kNoun) && EndsWith(lower, "s")) {
        t.pos = Pos::kVerb;
      } else if (prev == Pos::kDet && next_nominal &&
                 !(EndsWith(lower, "s") && !EndsWith(lower, "ss"))) {
        t.pos = Pos::kAdj;
      } else if (k + 1 < tokens.size() && tokens[k + 1].pos == Pos::kNoun) {
        t.pos = Pos::kAdj;
      } else {
        t.pos = Pos::kNoun;
      }
    }
    decided[k] = true;
  }
  for (Token& t : tokens) t.lemma = Lemmatize(t.surface, t.pos);
  return tokens;
}

std::string CamelCase(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    bool start = true;
    for (char c : w) {
      if (!std::isalnum(static_cast<unsigned char>(c))) {
        start = true;
        continue;
      }
      out += start ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
      start = false;
    }
  }
  return out;
}

std::vector<std::string> SplitCamelCase(std::string_view name) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && !current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace symdrift::text

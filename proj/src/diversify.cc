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

#include "symdrift/diversify.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <regex>

#include "symdrift/error.h"

namespace symdrift::div {

using text::Pos;
using text::Token;

std::string_view LevelName(Level level) {
  switch (level) {
    case Level::kWord: return "word";
    case Level::kPhrase: return "phrase";
    case Level::kSentence: return "sentence";
  }
  return "word";
}

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kSynonymLexicon: return "synonym-lexicon";
    case Source::kParaphraseTable: return "paraphrase-table";
    case Source::kRewriteRule: return "rewrite-rule";
    case Source::kLlm: return "llm";
  }
  return "rewrite-rule";
}

namespace {

bool Eligible(const Token& t) {
  return t.pos != Pos::kPunct && t.pos != Pos::kPropn && t.pos != Pos::kNum &&
         !text::IsStopword(text::ToLower(t.lemma));
}

std::string LemmaKey(const std::vector<Token>& tokens, std::size_t first, std::size_t last) {
  std::string key;
  for (std::size_t i = first; i < last; ++i) {
    if (i > first) key += ' ';
    key += text::ToLower(tokens[i].lemma);
  }
  return key;
}

bool Contains(const Occurrence& outer, const Occurrence& inner) {
  return outer.span.unit == inner.span.unit && outer.first_token <= inner.first_token &&
         inner.last_token <= outer.last_token &&
         (outer.last_token - outer.first_token) > (inner.last_token - inner.first_token);
}

}  // namespace

ConceptInventory IdentifyRepeated(const Problem& p, const InventoryConfig& config) {
  std::map<std::string, Concept> grams;
  auto add = [&](std::size_t u, const std::vector<Token>& tokens, std::size_t first, std::size_t last) {
    Concept& c = grams[LemmaKey(tokens, first, last)];
    if (c.lemmas.empty()) {
      for (std::size_t i = first; i < last; ++i) c.lemmas.push_back(text::ToLower(tokens[i].lemma));
    }
    c.occurrences.push_back(
        Occurrence{Span{u, tokens[first].begin, tokens[last - 1].end}, first, last});
  };
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    const auto& tokens = p.unit(u).tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (!Eligible(tokens[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < tokens.size() && Eligible(tokens[j])) ++j;
      for (std::size_t a = i; a < j; ++a) {
        for (std::size_t n = 1; n <= config.max_n && a + n <= j; ++n) add(u, tokens, a, a + n);
      }
      i = j;
    }
    // Multi-word phrases (typically paraphrase-table keys) match on surface
    // words, stopwords included.
    for (const std::string& phrase : config.phrases) {
      const std::vector<std::string> words = text::SplitWords(text::ToLower(phrase));
      if (words.size() < 2) continue;
      for (std::size_t a = 0; a + words.size() <= tokens.size(); ++a) {
        bool match = true;
        for (std::size_t k = 0; k < words.size() && match; ++k) {
          match = text::ToLower(tokens[a + k].surface) == words[k];
        }
        if (match) add(u, tokens, a, a + words.size());
      }
    }
  }

  ConceptInventory inv;
  for (auto& [key, c] : grams) {
    std::sort(c.occurrences.begin(), c.occurrences.end(),
              [](const Occurrence& x, const Occurrence& y) { return x.span < y.span; });
    c.occurrences.erase(std::unique(c.occurrences.begin(), c.occurrences.end()), c.occurrences.end());
    c.frequency = c.occurrences.size();
    if (c.frequency >= 2) inv.entries.emplace(key, std::move(c));
  }
  // Drop grams that never occur outside a longer repeated gram.
  std::vector<std::string> subsumed;
  for (const auto& [key, c] : inv.entries) {
    const bool inside_always = std::all_of(c.occurrences.begin(), c.occurrences.end(), [&](const Occurrence& o) {
      for (const auto& [other_key, other] : inv.entries) {
        if (other_key == key) continue;
        for (const Occurrence& big : other.occurrences) {
          if (Contains(big, o)) return true;
        }
      }
      return false;
    });
    if (inside_always) subsumed.push_back(key);
  }
  for (const std::string& key : subsumed) inv.entries.erase(key);

  // Longest match first; earlier position wins among equals.
  std::vector<std::pair<const Occurrence*, const std::string*>> all;
  for (const auto& [key, c] : inv.entries) {
    for (const Occurrence& o : c.occurrences) all.emplace_back(&o, &key);
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    const std::size_t lx = x.first->last_token - x.first->first_token;
    const std::size_t ly = y.first->last_token - y.first->first_token;
    if (lx != ly) return lx > ly;
    return x.first->span < y.first->span;
  });
  std::map<std::size_t, std::vector<bool>> taken;
  for (const auto& [occ, key] : all) {
    auto& used = taken[occ->span.unit];
    used.resize(p.unit(occ->span.unit).tokens.size(), false);
    bool free = true;
    for (std::size_t t = occ->first_token; t < occ->last_token; ++t) free &= !used[t];
    if (!free) continue;
    for (std::size_t t = occ->first_token; t < occ->last_token; ++t) used[t] = true;
    inv.sites.emplace(occ->span, *key);
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Sentence-level rewriting

namespace {

// A rewrite template: output pieces are literals or capture-group references.
enum class Case { kKeep, kUpper, kLower, kLowerArticle };

struct Piece {
  std::string literal;
  int group = -1;
  Case change = Case::kKeep;
};

SentenceRewrite Build(const std::smatch& m, const std::vector<Piece>& pieces) {
  SentenceRewrite out;
  for (const Piece& piece : pieces) {
    if (piece.group < 0) {
      out.text += piece.literal;
      continue;
    }
    std::string value = m.str(piece.group);
    if (!value.empty()) {
      const auto c = static_cast<unsigned char>(value[0]);
      if (piece.change == Case::kUpper) value[0] = static_cast<char>(std::toupper(c));
      if (piece.change == Case::kLower) value[0] = static_cast<char>(std::tolower(c));
      if (piece.change == Case::kLowerArticle && value.starts_with("The ")) value[0] = 't';
    }
    const auto src = static_cast<std::size_t>(m.position(piece.group));
    out.moves.push_back(Move{src, src + value.size(), out.text.size(), out.text.size() + value.size()});
    out.text += value;
  }
  return out;
}

Piece Lit(std::string s) { return Piece{std::move(s), -1, Case::kKeep}; }
Piece Grp(int g, Case change = Case::kKeep) { return Piece{"", g, change}; }

std::string ThirdPersonS(const std::string& verb) {
  if (verb.ends_with("s") || verb.ends_with("sh") || verb.ends_with("ch") || verb.ends_with("x")) {
    return verb + "es";
  }
  if (verb.size() > 1 && verb.back() == 'y' && std::string("aeiou").find(verb[verb.size() - 2]) == std::string::npos) {
    return verb.substr(0, verb.size() - 1) + "ies";
  }
  return verb + "s";
}

}  // namespace

std::vector<SentenceRewrite> RuleRewriter::Rewrite(const Sentence& s) const {
  static const std::regex kAll(R"(^All (.+?) (people|things) are (.+?)\.$)");
  static const std::regex kIf(R"(^If (someone|something) is (.+?),? then (they are|it is) (.+?)\.$)");
  static const std::regex kBare(R"(^([A-Za-z][a-z]+(?: and [a-z]+)*) (people|things) are (.+?)\.$)");
  static const std::regex kActive(R"(^([A-Z][a-z]+|The [a-z]+) ([a-z]+) ([A-Z][a-z]+|the [a-z]+)\.$)");
  static const std::regex kPassive(R"(^([A-Z][a-z]+|The [a-z]+) is ([a-z]+) by ([A-Z][a-z]+|the [a-z]+)\.$)");

  std::vector<SentenceRewrite> out;
  std::smatch m;
  const std::string& t = s.text;
  if (std::regex_match(t, m, kAll)) {
    const bool things = m.str(2) == "things";
    out.push_back(Build(m, {Lit(things ? "If something is " : "If someone is "), Grp(1),
                            Lit(things ? " then it is " : " then they are "), Grp(3), Lit(".")}));
    out.push_back(Build(m, {Grp(1, Case::kUpper), Lit(" "), Grp(2), Lit(" are "), Grp(3), Lit(".")}));
  } else if (std::regex_match(t, m, kIf)) {
    const bool things = m.str(1) == "something";
    out.push_back(Build(m, {Lit("All "), Grp(2), Lit(things ? " things are " : " people are "), Grp(4),
                            Lit(".")}));
  } else if (std::regex_match(t, m, kBare)) {
    out.push_back(Build(m, {Lit("All "), Grp(1, Case::kLower), Lit(" "), Grp(2), Lit(" are "), Grp(3), Lit(".")}));
  }
  if (!resources_) return out;
  if (std::regex_match(t, m, kPassive)) {
    if (auto lemma = resources_->derivations.Base(m.str(2), "VBN")) {
      out.push_back(Build(m, {Grp(3, Case::kUpper), Lit(" " + ThirdPersonS(*lemma) + " "),
                              Grp(1, Case::kLowerArticle), Lit(".")}));
    }
  } else if (std::regex_match(t, m, kActive)) {
    const std::string verb = m.str(2);
    const std::string lemma = text::Lemmatize(verb, Pos::kVerb);
    const auto participle = resources_->derivations.Derive(lemma, "VERB", "VBN");
    if (participle && ThirdPersonS(lemma) == verb) {
      out.push_back(Build(m, {Grp(3, Case::kUpper), Lit(" is " + *participle + " by "),
                              Grp(1, Case::kLowerArticle), Lit(".")}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variants

VariantSet BuildVariants(const Problem& p, const ConceptInventory& inventory,
                         const lex::Resources* resources, const Rewriter* rewriter) {
  if (!resources) throw Error(ErrorCode::kResourceMissing, "lexical resources are not loaded");
  VariantSet set;
  for (const auto& [id, c] : inventory.entries) {
    std::vector<Variant>& out = set.variants[id];
    auto push = [&](Variant v) {
      if (text::ToLower(v.text) == id || text::SplitWords(v.text).size() > 4) return;
      for (const Variant& existing : out) {
        if (existing.text == v.text && existing.unit == v.unit) return;
      }
      out.push_back(std::move(v));
    };
    const Occurrence& first = c.occurrences.front();
    if (c.lemmas.size() == 1) {
      const Pos pos = p.unit(first.span.unit).tokens[first.first_token].pos;
      for (const std::string& syn : resources->synonyms.Synonyms(id, pos)) {
        push(Variant{syn, Level::kWord, Source::kSynonymLexicon, std::nullopt, {}});
      }
    }
    std::vector<lex::Paraphrase> paraphrases = resources->paraphrases.Lookup(id);
    for (const lex::Paraphrase& para :
         resources->paraphrases.Lookup(text::ToLower(p.SpanText(first.span)))) {
      paraphrases.push_back(para);
    }
    for (const lex::Paraphrase& para : paraphrases) {
      push(Variant{para.paraphrase, Level::kPhrase, Source::kParaphraseTable, std::nullopt, {}});
    }
    if (out.empty() && rewriter) {
      std::set<std::size_t> units;
      for (const Occurrence& o : c.occurrences) units.insert(o.span.unit);
      for (std::size_t u : units) {
        for (SentenceRewrite& r : rewriter->Rewrite(p.unit(u))) {
          if (r.text == p.unit(u).text) continue;
          Variant v{r.text, Level::kSentence, rewriter->source(), u, std::move(r)};
          out.push_back(std::move(v));
        }
      }
    }
    if (out.empty()) set.flagged.insert(id);
  }
  return set;
}

// ---------------------------------------------------------------------------
// Candidates

namespace {

// Re-inflects a base-form variant to match the replaced tokens.
std::string Inflect(const std::string& variant, const std::vector<Token>& tokens, const Occurrence& o) {
  std::string out = variant;
  const Token& head = tokens[o.last_token - 1];
  const std::string surface = text::ToLower(head.surface);
  const std::string lemma = text::ToLower(head.lemma);
  if (o.last_token - o.first_token == 1 && text::SplitWords(variant).size() == 1 && surface != lemma) {
    if (head.pos == Pos::kNoun) {
      out = text::Pluralize(variant);
    } else if (head.pos == Pos::kVerb && surface.ends_with("s")) {
      out = ThirdPersonS(variant);
    } else if (head.pos == Pos::kVerb && surface.ends_with("ed")) {
      out = variant.ends_with("e") ? variant + "d" : variant + "ed";
    }
  }
  const char c = tokens[o.first_token].surface.empty() ? 'a' : tokens[o.first_token].surface[0];
  if (std::isupper(static_cast<unsigned char>(c))) out = text::Capitalize(out);
  return out;
}

struct SiteInfo {
  const Occurrence* occ;
  std::string concept_id;
};

std::vector<SiteInfo> SitesOf(const ConceptInventory& inventory, std::size_t unit) {
  std::vector<SiteInfo> sites;
  for (const auto& [span, id] : inventory.sites) {
    if (span.unit != unit) continue;
    for (const Occurrence& o : inventory.entries.at(id).occurrences) {
      if (o.span == span) sites.push_back({&o, id});
    }
  }
  return sites;
}

Candidate OriginalCandidate(const Problem& p, std::size_t unit, const std::vector<SiteInfo>& sites) {
  Candidate c;
  c.text = p.unit(unit).text;
  c.original = true;
  for (const SiteInfo& s : sites) {
    c.uses.push_back(SiteUse{s.concept_id, s.concept_id, s.occ->span.begin, s.occ->span.end, s.occ->span});
  }
  return c;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> MapSpan(const Candidate& c, std::size_t begin,
                                                            std::size_t end) {
  if (c.sentence_level) {
    for (const Move& m : c.edits) {
      if (m.src_begin <= begin && end <= m.src_end) {
        return std::make_pair(m.dst_begin + (begin - m.src_begin), m.dst_begin + (end - m.src_begin));
      }
    }
    return std::nullopt;
  }
  auto map = [&](std::size_t pos, bool is_end) -> std::size_t {
    long shift = 0;
    for (const Move& m : c.edits) {
      const bool inside = is_end ? (m.src_begin < pos && pos <= m.src_end) : (m.src_begin <= pos && pos < m.src_end);
      if (inside) return is_end ? m.dst_end : m.dst_begin;
      if (m.src_end <= pos) {
        shift += static_cast<long>(m.dst_end - m.dst_begin) - static_cast<long>(m.src_end - m.src_begin);
      }
    }
    return static_cast<std::size_t>(static_cast<long>(pos) + shift);
  };
  return std::make_pair(map(begin, false), map(end, true));
}

std::vector<Candidate> GenerateCandidates(const Problem& p, std::size_t unit,
                                          const ConceptInventory& inventory,
                                          const VariantSet& variants, double theta,
                                          const sim::Scorer& scorer) {
  if (!(theta > 0 && theta <= 1)) throw Error(ErrorCode::kInvalidArgument, "theta must lie in (0, 1]");
  const Sentence& sentence = p.unit(unit);
  const std::vector<SiteInfo> sites = SitesOf(inventory, unit);
  std::vector<Candidate> out{OriginalCandidate(p, unit, sites)};
  if (sites.empty()) return out;

  // Options per site: 0 keeps the original surface.
  std::vector<std::vector<const Variant*>> options(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    options[i].push_back(nullptr);
    const auto it = variants.variants.find(sites[i].concept_id);
    if (it == variants.variants.end()) continue;
    for (const Variant& v : it->second) {
      if (!v.unit) options[i].push_back(&v);
    }
  }
  std::vector<std::size_t> pick(sites.size(), 0);
  std::size_t produced = 0;
  auto advance = [&]() {
    for (std::size_t i = sites.size(); i-- > 0;) {
      if (++pick[i] < options[i].size()) return true;
      pick[i] = 0;
    }
    return false;
  };
  while (advance() && produced < kMaxCombinationsPerSentence) {
    ++produced;
    Candidate c;
    std::size_t cursor = 0;
    Level level = Level::kWord;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const Occurrence& o = *sites[i].occ;
      c.text += sentence.text.substr(cursor, o.span.begin - cursor);
      const Variant* v = options[i][pick[i]];
      const std::string surface = v ? Inflect(v->text, sentence.tokens, o)
                                    : sentence.text.substr(o.span.begin, o.span.end - o.span.begin);
      const std::size_t begin = c.text.size();
      c.text += surface;
      if (v) {
        c.edits.push_back(Move{o.span.begin, o.span.end, begin, c.text.size()});
        if (v->level == Level::kPhrase) level = Level::kPhrase;
      }
      c.uses.push_back(SiteUse{sites[i].concept_id, v ? text::ToLower(v->text) : sites[i].concept_id, begin,
                               c.text.size(), o.span});
      cursor = o.span.end;
    }
    c.text += sentence.text.substr(cursor);
    c.level = level;
    c.score = scorer.Score(sentence.text, c.text);
    if (c.score >= theta) out.push_back(std::move(c));
  }

  // Sentence-level rewrites of this unit.
  std::set<std::string> seen;
  for (const SiteInfo& s : sites) {
    const auto it = variants.variants.find(s.concept_id);
    if (it == variants.variants.end()) continue;
    for (const Variant& v : it->second) {
      if (!v.unit || *v.unit != unit || !seen.insert(v.text).second) continue;
      Candidate c;
      c.text = v.text;
      c.sentence_level = true;
      c.level = Level::kSentence;
      c.edits = v.rewrite.moves;
      bool complete = true;
      for (const SiteInfo& site : sites) {
        const auto mapped = MapSpan(c, site.occ->span.begin, site.occ->span.end);
        if (!mapped) {
          complete = false;
          break;
        }
        c.uses.push_back(SiteUse{site.concept_id, site.concept_id, mapped->first, mapped->second, site.occ->span});
      }
      if (!complete) continue;
      c.score = scorer.Score(sentence.text, c.text);
      if (c.score >= theta) out.push_back(std::move(c));
    }
  }
  // Duplicate texts (e.g. a synonym equal to another site's surface) keep the first.
  std::set<std::string> texts;
  std::vector<Candidate> unique;
  for (Candidate& c : out) {
    if (texts.insert(c.text).second) unique.push_back(std::move(c));
  }
  return unique;
}

// ---------------------------------------------------------------------------
// Assembly

std::size_t RepeatCount(const std::vector<std::vector<Candidate>>& candidates,
                        const std::vector<std::size_t>& choice) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  std::size_t repeats = 0;
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    for (const SiteUse& use : candidates[u][choice[u]].uses) {
      if (counts[use.concept_id][use.form]++ > 0) ++repeats;
    }
  }
  return repeats;
}

namespace {

using Counts = std::map<std::string, std::map<std::string, std::size_t>>;

std::size_t Add(Counts& counts, const Candidate& c) {
  std::size_t added = 0;
  for (const SiteUse& use : c.uses) {
    if (counts[use.concept_id][use.form]++ > 0) ++added;
  }
  return added;
}

void Remove(Counts& counts, const Candidate& c) {
  for (const SiteUse& use : c.uses) --counts[use.concept_id][use.form];
}

class ExactSearch {
 public:
  explicit ExactSearch(const std::vector<std::vector<Candidate>>& candidates)
      : candidates_(candidates), current_(candidates.size(), 0) {}

  std::vector<std::size_t> Run() {
    best_ = current_;
    best_repeats_ = RepeatCount(candidates_, current_);
    Counts counts;
    Search(0, 0, counts);
    return best_;
  }

 private:
  // Leaves are visited in lexicographic order starting from the all-zero
  // choice, so a later leaf only wins with strictly fewer repeats, and a
  // prefix that already ties the best can be cut.
  void Search(std::size_t u, std::size_t repeats, Counts& counts) {
    if (repeats >= best_repeats_) return;
    if (u == candidates_.size()) {
      best_repeats_ = repeats;
      best_ = current_;
      return;
    }
    for (std::size_t i = 0; i < candidates_[u].size(); ++i) {
      current_[u] = i;
      const std::size_t added = Add(counts, candidates_[u][i]);
      Search(u + 1, repeats + added, counts);
      Remove(counts, candidates_[u][i]);
    }
    current_[u] = 0;
  }

  const std::vector<std::vector<Candidate>>& candidates_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  std::size_t best_repeats_ = 0;
};

std::vector<std::size_t> Greedy(const std::vector<std::vector<Candidate>>& candidates) {
  Counts counts;
  std::vector<std::size_t> choice(candidates.size(), 0);
  for (const auto& list : candidates) {
    if (list.size() == 1) Add(counts, list.front());
  }
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    if (candidates[u].size() == 1) continue;
    std::size_t best = 0, best_added = SIZE_MAX;
    for (std::size_t i = 0; i < candidates[u].size(); ++i) {
      Counts trial = counts;
      const std::size_t added = Add(trial, candidates[u][i]);
      if (added < best_added) {
        best_added = added;
        best = i;
      }
    }
    choice[u] = best;
    Add(counts, candidates[u][best]);
  }
  return choice;
}

}  // namespace

DiversifiedProblem Assemble(const Problem& base, const std::vector<std::vector<Candidate>>& candidates,
                            const text::PosHints* hints) {
  if (candidates.size() != base.unit_count()) {
    throw Error(ErrorCode::kInvalidArgument, "one candidate list per unit required");
  }
  std::uint64_t product = 1;
  for (const auto& list : candidates) {
    if (list.empty()) throw Error(ErrorCode::kInvalidArgument, "unit without candidates");
    product = product > kExactAssemblyLimit ? product : product * list.size();
  }
  DiversifiedProblem out;
  if (product <= kExactAssemblyLimit) {
    out.choice = ExactSearch(candidates).Run();
  } else {
    out.choice = Greedy(candidates);
    out.flags.insert("greedy");
  }
  out.repeats = RepeatCount(candidates, out.choice);

  Problem& q = out.problem;
  q = base;
  q.base_id = base.base_id.empty() ? base.id : base.base_id;
  q.provenance.clear();
  q.gold_concepts.clear();
  for (std::size_t u = 0; u < base.unit_count(); ++u) {
    const Candidate& c = candidates[u][out.choice[u]];
    if (c.text != base.unit(u).text) {
      q.unit(u) = MakeSentence(c.text, hints);
      ++out.intensity;
    }
    for (const SiteUse& use : c.uses) {
      const Span span{u, use.begin, use.end};
      q.provenance[use.concept_id].push_back(
          ProvenanceEntry{span, c.text.substr(use.begin, use.end - use.begin), use.source});
    }
  }
  for (const auto& [span, id] : base.gold_concepts) {
    const Candidate& c = candidates[span.unit][out.choice[span.unit]];
    if (const auto mapped = MapSpan(c, span.begin, span.end)) {
      q.gold_concepts.emplace(Span{span.unit, mapped->first, mapped->second}, id);
    }
  }
  return out;
}

DiversifiedProblem DiversifyProblem(const Problem& p, const DiversifyConfig& config) {
  if (!config.resources) throw Error(ErrorCode::kResourceMissing, "lexical resources are not loaded");
  const std::size_t k = config.intensity.value_or(p.unit_count());
  if (k > p.unit_count()) {
    throw Error(ErrorCode::kInvalidArgument, "intensity exceeds the number of sentences");
  }
  std::unique_ptr<sim::Scorer> owned;
  const sim::Scorer* scorer = config.scorer;
  if (!scorer) {
    owned = std::make_unique<sim::FallbackScorer>(config.resources->synonyms);
    scorer = owned.get();
  }
  InventoryConfig inv_config = config.inventory;
  for (const lex::Paraphrase& para : config.resources->paraphrases.entries()) {
    inv_config.phrases.push_back(para.phrase);
  }
  const ConceptInventory inventory = IdentifyRepeated(p, inv_config);
  const text::PosHints* hints = &config.resources->synonyms;

  std::vector<std::vector<Candidate>> candidates(p.unit_count());
  std::vector<std::size_t> site_count(p.unit_count(), 0);
  for (const auto& [span, id] : inventory.sites) ++site_count[span.unit];
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    candidates[u].push_back(OriginalCandidate(p, u, SitesOf(inventory, u)));
  }
  if (inventory.empty()) {
    DiversifiedProblem out = Assemble(p, candidates, hints);
    out.flags.insert("no-repeats");
    return out;
  }
  std::vector<std::size_t> order(p.unit_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return site_count[a] > site_count[b]; });
  const VariantSet variants = BuildVariants(p, inventory, config.resources, config.rewriter);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t u = order[i];
    if (site_count[u] == 0) continue;
    candidates[u] = GenerateCandidates(p, u, inventory, variants, config.theta, *scorer);
  }
  DiversifiedProblem out = Assemble(p, candidates, hints);
  if (!variants.flagged.empty()) out.flags.insert("no-variants");
  return out;
}

// ---------------------------------------------------------------------------
// Exploratory perturbations

std::string_view PerturbationName(PerturbationType type) {
  switch (type) {
    case PerturbationType::kThirdPerson: return "third-person";
    case PerturbationType::kSynonym: return "synonym";
    case PerturbationType::kPosShift: return "pos-shift";
    case PerturbationType::kSyntactic: return "syntactic";
  }
  return "synonym";
}

PerturbationType ParsePerturbation(std::string_view name) {
  for (PerturbationType t : {PerturbationType::kThirdPerson, PerturbationType::kSynonym,
                             PerturbationType::kPosShift, PerturbationType::kSyntactic}) {
    if (PerturbationName(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown perturbation '" + std::string(name) + "'");
}

namespace {

struct Site {
  PerturbationType type;
  std::size_t unit;
  std::size_t begin, end;  // replaced source range; whole unit for syntactic
  std::string replacement;
  std::vector<Move> moves;  // syntactic only
};

std::string MatchCase(const std::string& replacement, const std::string& original) {
  if (!original.empty() && std::isupper(static_cast<unsigned char>(original[0]))) {
    return text::Capitalize(replacement);
  }
  return replacement;
}

std::vector<Site> FindSites(const Problem& p, PerturbationType type, const lex::Resources& r) {
  std::vector<Site> sites;
  switch (type) {
    case PerturbationType::kThirdPerson: {
      std::map<std::string, std::size_t> first_unit;
      for (std::size_t u = 0; u < p.unit_count(); ++u) {
        for (const Token& t : p.unit(u).tokens) {
          if (t.pos != Pos::kPropn) continue;
          const auto [it, inserted] = first_unit.emplace(t.lemma, u);
          if (inserted || it->second == u) continue;
          const std::string noun = r.synonyms.Hypernym(text::ToLower(t.lemma)).value_or("person");
          sites.push_back(Site{type, u, t.begin, t.end, MatchCase("the " + noun, t.begin == 0 ? "T" : "t"), {}});
        }
      }
      break;
    }
    case PerturbationType::kSynonym:
      for (std::size_t u = 0; u < p.unit_count(); ++u) {
        const auto& tokens = p.unit(u).tokens;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          const Token& t = tokens[i];
          if (t.pos != Pos::kAdj && t.pos != Pos::kNoun && t.pos != Pos::kVerb) continue;
          if (text::IsStopword(text::ToLower(t.lemma))) continue;
          const auto syns = r.synonyms.Synonyms(text::ToLower(t.lemma), t.pos);
          if (syns.empty()) continue;
          const Occurrence o{Span{u, t.begin, t.end}, i, i + 1};
          sites.push_back(Site{type, u, t.begin, t.end, Inflect(syns.front(), tokens, o), {}});
        }
      }
      break;
    case PerturbationType::kPosShift:
      for (std::size_t u = 0; u < p.unit_count(); ++u) {
        const auto& tokens = p.unit(u).tokens;
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
          const Token& a = tokens[i];
          const Token& b = tokens[i + 1];
          const std::string verb = text::ToLower(a.surface);
          if (a.pos == Pos::kAux && a.lemma == "be" && b.pos == Pos::kAdj) {
            const auto noun = r.derivations.Derive(text::ToLower(b.lemma), "ADJ", "NOUN");
            if (!noun) continue;
            const std::string shows = verb == "are" ? "show" : (verb == "was" || verb == "were") ? "showed" : "shows";
            sites.push_back(Site{type, u, a.begin, b.end, MatchCase(shows + " " + *noun, a.surface), {}});
          } else if ((verb == "shows" || verb == "show") && b.pos == Pos::kNoun) {
            const auto adj = r.derivations.Derive(text::ToLower(b.lemma), "NOUN", "ADJ");
            if (!adj) continue;
            const std::string is = verb == "show" ? "are" : "is";
            sites.push_back(Site{type, u, a.begin, b.end, MatchCase(is + " " + *adj, a.surface), {}});
          }
        }
      }
      break;
    case PerturbationType::kSyntactic: {
      const RuleRewriter rewriter(&r);
      for (std::size_t u = 0; u < p.unit_count(); ++u) {
        for (SentenceRewrite& rw : rewriter.Rewrite(p.unit(u))) {
          // Only voice changes count as syntactic perturbations here.
          if (rw.text.find(" by ") == std::string::npos && p.unit(u).text.find(" by ") == std::string::npos) continue;
          sites.push_back(Site{type, u, 0, p.unit(u).text.size(), rw.text, rw.moves});
        }
      }
      break;
    }
  }
  return sites;
}

}  // namespace

PerturbedProblem PerturbExploratory(const Problem& p, const std::set<PerturbationType>& types,
                                    std::size_t budget, std::uint64_t seed,
                                    const lex::Resources& resources) {
  if (budget < 1 || budget > 2) throw Error(ErrorCode::kInvalidArgument, "budget must be 1 or 2");
  std::vector<Site> sites;
  for (PerturbationType t : types) {
    for (Site& s : FindSites(p, t, resources)) sites.push_back(std::move(s));
  }
  if (sites.empty()) throw Error(ErrorCode::kNoApplicableSite, "no sentence admits the requested perturbations");
  // Fisher-Yates with plain modulo draws keeps the order identical across
  // standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = sites.size(); i > 1; --i) std::swap(sites[i - 1], sites[rng() % i]);

  PerturbedProblem out;
  out.problem = p;
  std::set<std::size_t> touched;
  for (const Site& s : sites) {
    if (out.applied.size() == budget) break;
    if (!touched.insert(s.unit).second) continue;
    const std::string& original = p.unit(s.unit).text;
    const std::string updated = original.substr(0, s.begin) + s.replacement + original.substr(s.end);
    Candidate edit;  // reuse span mapping for gold concepts
    edit.sentence_level = s.type == PerturbationType::kSyntactic;
    edit.edits = edit.sentence_level
                     ? s.moves
                     : std::vector<Move>{Move{s.begin, s.end, s.begin, s.begin + s.replacement.size()}};
    std::map<Span, std::string> remapped;
    for (const auto& [span, id] : out.problem.gold_concepts) {
      if (span.unit != s.unit) {
        remapped.emplace(span, id);
      } else if (const auto m = MapSpan(edit, span.begin, span.end)) {
        remapped.emplace(Span{span.unit, m->first, m->second}, id);
      }
    }
    out.problem.gold_concepts = std::move(remapped);
    out.problem.unit(s.unit) = MakeSentence(updated, &resources.synonyms);
    const std::size_t end = edit.sentence_level ? updated.size() : s.begin + s.replacement.size();
    out.applied.push_back(Perturbation{s.type, s.unit, original.substr(s.begin, s.end - s.begin), s.replacement,
                                       Span{s.unit, edit.sentence_level ? 0 : s.begin, end}});
  }
  std::sort(out.applied.begin(), out.applied.end(),
            [](const Perturbation& a, const Perturbation& b) { return a.unit < b.unit; });
  return out;
}

}  // namespace symdrift::div

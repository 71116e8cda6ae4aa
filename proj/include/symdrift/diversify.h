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

// Logic-invariant linguistic diversification.
//
// Pipeline: find expressions repeated across a problem, build word, phrase and
// sentence level variants for them, keep the rewrites of each sentence that
// stay above a similarity threshold, then pick one rewrite per sentence so
// that as few surface forms as possible repeat.

#ifndef SYMDRIFT_DIVERSIFY_H_
#define SYMDRIFT_DIVERSIFY_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symdrift/lexicon.h"
#include "symdrift/problem.h"
#include "symdrift/similarity.h"

namespace symdrift::div {

struct Occurrence {
  Span span;
  std::size_t first_token = 0;  // token range [first_token, last_token)
  std::size_t last_token = 0;
  bool operator==(const Occurrence&) const = default;
};

struct Concept {
  std::vector<std::string> lemmas;
  std::vector<Occurrence> occurrences;  // every match of the n-gram
  std::size_t frequency = 0;            // == occurrences.size()
};

struct ConceptInventory {
  // Keyed by the space-joined lemma sequence.
  std::map<std::string, Concept> entries;
  // Extraction sites after longest-match resolution: each token belongs to at
  // most one site.
  std::map<Span, std::string> sites;

  bool empty() const { return entries.empty(); }
};

struct InventoryConfig {
  std::size_t max_n = 3;
  // Multi-word phrases matched on surface words even when they contain
  // stopwords (paraphrase-table keys such as "is the parent of").
  std::vector<std::string> phrases;
};

// All lemmatised n-grams (n <= max_n) of content tokens occurring at least
// twice across sentences and question. Grams never include punctuation, proper
// names or stopwords. A gram whose every occurrence lies inside one longer
// repeated gram is dropped.
ConceptInventory IdentifyRepeated(const Problem& p, const InventoryConfig& config = {});

enum class Level { kWord, kPhrase, kSentence };
enum class Source { kSynonymLexicon, kParaphraseTable, kRewriteRule, kLlm };

std::string_view LevelName(Level level);
std::string_view SourceName(Source source);

// A source span of the original sentence and where its text landed.
struct Move {
  std::size_t src_begin = 0, src_end = 0;
  std::size_t dst_begin = 0, dst_end = 0;
};

struct SentenceRewrite {
  std::string text;
  std::vector<Move> moves;  // every content token of the source is accounted for
};

// Sentence-level rewriting. The rule-based implementation swaps between
// equivalent templates; an LLM-backed one can be plugged in.
class Rewriter {
 public:
  virtual ~Rewriter() = default;
  virtual std::vector<SentenceRewrite> Rewrite(const Sentence& s) const = 0;
  virtual Source source() const { return Source::kRewriteRule; }
};

class RuleRewriter : public Rewriter {
 public:
  // `resources` supplies participles for active/passive swaps; may be null.
  explicit RuleRewriter(const lex::Resources* resources = nullptr) : resources_(resources) {}
  std::vector<SentenceRewrite> Rewrite(const Sentence& s) const override;

 private:
  const lex::Resources* resources_;
};

struct Variant {
  std::string text;  // base form; re-inflected at substitution time
  Level level = Level::kWord;
  Source source = Source::kSynonymLexicon;
  // Sentence-level variants replace a whole unit.
  std::optional<std::size_t> unit;
  SentenceRewrite rewrite;
};

struct VariantSet {
  std::map<std::string, std::vector<Variant>> variants;  // concept id -> variants
  std::set<std::string> flagged;  // concepts left without any variant
};

// Throws kResourceMissing when `resources` is null.
VariantSet BuildVariants(const Problem& p, const ConceptInventory& inventory,
                         const lex::Resources* resources, const Rewriter* rewriter);

// One concept occurrence inside a candidate sentence.
struct SiteUse {
  std::string concept_id;
  std::string form;  // lower-cased lemma form used, for repeat counting
  std::size_t begin = 0, end = 0;  // in the candidate text
  Span source;                     // in the base problem
};

struct Candidate {
  std::string text;
  double score = 1.0;
  Level level = Level::kWord;
  bool original = false;
  std::vector<SiteUse> uses;
  // Word and phrase level: replaced source ranges. Sentence level: moves.
  std::vector<Move> edits;
  bool sentence_level = false;
};

// Maps a source span of the unit onto the candidate text, if it survives.
std::optional<std::pair<std::size_t, std::size_t>> MapSpan(const Candidate& c, std::size_t begin,
                                                            std::size_t end);

inline constexpr double kDefaultTheta = 0.90;
inline constexpr std::size_t kMaxCombinationsPerSentence = 256;

// The original sentence first, then every substitution (alone and combined
// across sites) and sentence-level rewrite scoring at least theta.
std::vector<Candidate> GenerateCandidates(const Problem& p, std::size_t unit,
                                          const ConceptInventory& inventory,
                                          const VariantSet& variants, double theta,
                                          const sim::Scorer& scorer);

struct DiversifiedProblem {
  Problem problem;  // rewritten text, remapped gold spans, provenance
  std::size_t intensity = 0;
  std::vector<std::size_t> choice;  // chosen candidate per unit
  std::size_t repeats = 0;          // surface repetitions left after assembly
  std::set<std::string> flags;      // "no-repeats", "greedy", "no-variants"
};

// Sum over concepts of (occurrences - distinct forms).
std::size_t RepeatCount(const std::vector<std::vector<Candidate>>& candidates,
                        const std::vector<std::size_t>& choice);

inline constexpr std::uint64_t kExactAssemblyLimit = 65536;

// Picks one candidate per unit minimising RepeatCount, ties broken toward the
// lexicographically smallest choice vector. Exhaustive when the product of
// candidate counts is at most kExactAssemblyLimit, else a greedy pass in unit
// order that first counts the units with a single candidate.
DiversifiedProblem Assemble(const Problem& base, const std::vector<std::vector<Candidate>>& candidates,
                            const text::PosHints* hints = nullptr);

struct DiversifyConfig {
  double theta = kDefaultTheta;
  std::optional<std::size_t> intensity;  // units eligible for rewriting; all when unset
  const sim::Scorer* scorer = nullptr;
  const lex::Resources* resources = nullptr;
  const Rewriter* rewriter = nullptr;  // sentence-level fallback; off when null
  InventoryConfig inventory;
};

// The full pipeline. Only the `intensity` units holding the most site
// occurrences (ties by index) may change; options are never rewritten.
DiversifiedProblem DiversifyProblem(const Problem& p, const DiversifyConfig& config);

enum class PerturbationType { kThirdPerson, kSynonym, kPosShift, kSyntactic };

std::string_view PerturbationName(PerturbationType type);
PerturbationType ParsePerturbation(std::string_view name);

struct Perturbation {
  PerturbationType type;
  std::size_t unit = 0;
  std::string before;
  std::string after;
  Span span;  // where `after` sits in the perturbed problem
};

struct PerturbedProblem {
  Problem problem;
  std::vector<Perturbation> applied;
};

// Applies at most `budget` (1 or 2) perturbations of the requested types at
// sites drawn deterministically from `seed`, at most one per unit. Throws
// kNoApplicableSite when nothing applies and kInvalidArgument on a bad budget.
PerturbedProblem PerturbExploratory(const Problem& p, const std::set<PerturbationType>& types,
                                    std::size_t budget, std::uint64_t seed,
                                    const lex::Resources& resources);

}  // namespace symdrift::div

#endif  // SYMDRIFT_DIVERSIFY_H_

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

// Mental representation table: an external memory that maps groups of
// equivalent surface expressions to one logical symbol while a problem is
// being translated.
//
// Each new predicate surface goes through ProcessExpression:
//   Reuse   an entry already holds an equivalent expression
//   Refine  an entry holds a compound/atomic counterpart; the compound's
//           symbol becomes base & modifier and earlier atoms are rewritten
//   Extend  otherwise; a fresh entry and symbol

#ifndef SYMDRIFT_MENTAL_H_
#define SYMDRIFT_MENTAL_H_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdrift/fol.h"
#include "symdrift/lexicon.h"
#include "symdrift/net.h"
#include "symdrift/problem.h"
#include "symdrift/translate.h"

namespace symdrift::mental {

enum class Decision { kExtend, kReuse, kRefine };

std::string_view DecisionName(Decision d);

// Symbol names of the atomic parts a compound stands for.
struct Decomposition {
  std::string base;
  std::string modifier;
  bool operator==(const Decomposition&) const = default;
};

struct Entry {
  std::size_t id = 0;
  std::vector<std::string> expressions;  // distinct, in arrival order
  std::string symbol;
  std::size_t arity = 1;
  std::optional<Decomposition> decomposition;
};

struct LogEvent {
  Decision decision;
  std::string expression;
  std::size_t entry = 0;
};

// What an expression currently translates to.
struct Resolution {
  std::string symbol;  // the entry symbol; retired once decomposed
  std::optional<Decomposition> decomposition;

  // "Symbol" or "Base & Modifier".
  std::string Label() const;
  // The atom text for the given argument list.
  std::string Render(std::string_view args) const;
};

class MentalTable {
 public:
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<LogEvent>& log() const { return log_; }
  bool empty() const { return entries_.empty(); }

  // Exact surface match; no oracle calls.
  std::optional<Resolution> Lookup(std::string_view expression) const;
  std::optional<std::size_t> EntryOf(std::string_view expression) const;
  bool HasSymbol(std::string_view symbol) const;

  std::size_t AddEntry(std::string expression, std::string symbol, std::size_t arity);
  void AddExpression(std::size_t entry, std::string expression);
  void Decompose(std::size_t entry, Decomposition decomposition);
  void Record(LogEvent event) { log_.push_back(std::move(event)); }

  // Throws kInvalidArgument when expression sets overlap or a symbol is held
  // by two entries.
  void Audit() const;

  // One line per entry: "{a, b} -> Symbol" or "{a} -> Base & Modifier".
  std::string Render() const;

 private:
  std::vector<Entry> entries_;
  std::vector<LogEvent> log_;
};

struct Conflict {
  std::string atomic;    // the more atomic expression
  std::string modifier;  // what the compound adds to it
};

// Equivalence and conflict judgements between an expression and an entry's
// expression set. Implementations may cache; calls come from one thread per
// problem but an oracle may be shared across problems.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual bool Equiv(std::string_view e, const std::vector<std::string>& expressions) = 0;
  virtual std::optional<Conflict> Conflicts(std::string_view e, const std::vector<std::string>& expressions) = 0;
  virtual net::Usage usage() const { return {}; }
};

// Deterministic oracle from the bundled lexicon. Expressions become bags of
// content lemmas, nouns mapped to their adjective base and every lemma to its
// synonym group. Equivalent iff the bags match, or one side is a bare
// category noun ("the person", "the animal") and the other a name or a noun
// with that hypernym. Conflict iff one bag strictly contains the other with
// exactly one lemma to spare.
class LexiconOracle : public Oracle {
 public:
  explicit LexiconOracle(const lex::Resources* resources);
  bool Equiv(std::string_view e, const std::vector<std::string>& expressions) override;
  std::optional<Conflict> Conflicts(std::string_view e, const std::vector<std::string>& expressions) override;

 private:
  struct Bag {
    std::vector<std::string> groups;  // sorted
    std::vector<std::string> words;   // parallel: the lemma behind each group
    bool proper = false;              // a single proper name
    std::optional<std::string> hypernym;
  };
  Bag BagOf(std::string_view e) const;
  bool Same(const Bag& a, const Bag& b) const;

  const lex::Resources* resources_;
};

struct LlmOracleConfig {
  std::filesystem::path prompt_dir;  // holds equiv.txt and conflict.txt
  double temperature = 0.0;
};

// Yes/no prompts to a chat model. Decisions are cached per (expression,
// expression set); an unparseable reply is retried once, then kOracleFailure.
class LlmOracle : public Oracle {
 public:
  LlmOracle(std::shared_ptr<net::ChatClient> client, LlmOracleConfig config);
  bool Equiv(std::string_view e, const std::vector<std::string>& expressions) override;
  std::optional<Conflict> Conflicts(std::string_view e, const std::vector<std::string>& expressions) override;
  net::Usage usage() const override;
  std::size_t calls() const;

 private:
  std::string Ask(const std::string& prompt);

  std::shared_ptr<net::ChatClient> client_;
  LlmOracleConfig config_;
  std::string equiv_template_, conflict_template_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, bool> equiv_cache_;
  std::map<std::pair<std::string, std::string>, std::optional<Conflict>> conflict_cache_;
  net::Usage usage_;
  std::size_t calls_ = 0;
};

struct TraceStep {
  std::string expression;
  Decision decision;
  std::string symbol;       // resolution label after the step
  std::size_t revisions = 0;  // program revisions so far
};

struct TranslationState {
  fol::LogicProgram program;
  MentalTable table;
  std::vector<TraceStep> trace;
  std::size_t revisions = 0;
  const text::PosHints* hints = nullptr;
};

// Routes one expression through the table. Refinement applies only to unary
// predicates. On kOracleFailure the state is left as it was.
Resolution ProcessExpression(TranslationState& st, std::string_view e, std::size_t arity, Oracle& oracle);

struct MentalResult {
  tr::Translation translation;
  MentalTable table;
  std::vector<TraceStep> trace;
};

// Translates unit by unit: the base translator's skeleton supplies surfaces
// and formula shapes, the table supplies symbols. Ordering puzzles have no
// predicate slots and pass through the base translator. A skeleton failure is
// recorded as a parse error, as Translate would.
MentalResult TranslateWithMental(const Problem& p, const tr::Translator& base, Oracle& oracle,
                                 const text::PosHints* hints = nullptr);

}  // namespace symdrift::mental

#endif  // SYMDRIFT_MENTAL_H_

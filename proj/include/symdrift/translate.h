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

// Natural language to logic program translators.
//
//   GoldTranslator            the reference program, one symbol per concept
//   NaiveTranslator           sentence templates; predicates named after the
//                             literal surface they come from
//   SplitAdversaryTranslator  the reference program with a separate symbol for
//                             every distinct surface of a concept
//   LlmTranslator             few-shot prompting of a chat model
//
// Deterministic translators also expose a Skeleton: the formula shapes with
// the predicate positions left open, each tied to the surface it came from.
// The mental-table driver (mental.h) fills those positions itself.

#ifndef SYMDRIFT_TRANSLATE_H_
#define SYMDRIFT_TRANSLATE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdrift/fol.h"
#include "symdrift/lexicon.h"
#include "symdrift/net.h"
#include "symdrift/problem.h"

namespace symdrift::tr {

// One predicate occurrence: where its surface sits in the problem and which
// symbol it became. A refined compound is reported as "Base & Modifier".
struct SymbolUse {
  Span span;
  std::string surface;
  std::string symbol;
};

struct Translation {
  std::string raw;                         // model reply or rendered program
  std::optional<std::string> program;      // program text (logic or csp form)
  std::optional<std::string> parse_error;  // set iff program is not
  std::vector<SymbolUse> uses;
  net::Usage usage;
};

struct Slot {
  Span span;
  std::string surface;
  std::size_t arity = 1;
};

// `formula` marks slot k as "{k}(args)"; every slot occurs exactly once.
struct SkeletonUnit {
  std::size_t unit = 0;
  std::string formula;
  std::vector<Slot> slots;
};

struct Skeleton {
  fol::Semantics semantics = fol::Semantics::kOpenWorld;
  std::vector<SkeletonUnit> premises;
  std::optional<SkeletonUnit> query;
  std::string raw;  // model reply, for translators that call one
  net::Usage usage;
};

// Replaces every "{k}(args)" by fill(k, args).
std::string FillSlots(std::string_view formula,
                      const std::function<std::string(std::size_t, std::string_view)>& fill);

// Program text in the form ParseProgram reads.
std::string ProgramText(fol::Semantics semantics, const std::vector<std::string>& premises,
                        const std::optional<std::string>& query);

fol::Semantics SemanticsOf(TaskKind kind);

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string_view name() const = 0;
  // Never throws for unusable input: the failure lands in parse_error.
  virtual Translation Translate(const Problem& p) const = 0;
  // Throws kTranslationFailure (or kMissingGold) when no skeleton exists.
  virtual Skeleton Propose(const Problem& p) const;
  virtual bool deterministic() const { return true; }
};

// Fills a skeleton with `name(slot)` for every slot.
Translation FillSkeleton(const Skeleton& skeleton,
                         const std::function<std::string(const Slot&)>& name);

// Throws kMissingGold when the problem has no gold logic, or was diversified
// but carries no gold concept spans.
class GoldTranslator : public Translator {
 public:
  std::string_view name() const override { return "gold"; }
  Translation Translate(const Problem& p) const override;
  // Requires one gold premise per sentence; atoms are matched in order to the
  // unit's gold spans of the same concept.
  Skeleton Propose(const Problem& p) const override;
};

class SplitAdversaryTranslator : public Translator {
 public:
  explicit SplitAdversaryTranslator(const text::PosHints* hints = nullptr) : hints_(hints) {}
  std::string_view name() const override { return "split-adversary"; }
  // The first surface of each concept keeps the gold symbol; every other
  // distinct surface (compared by lower-cased lemmas) gets its own.
  Translation Translate(const Problem& p) const override;
  Skeleton Propose(const Problem& p) const override;

 private:
  const text::PosHints* hints_;
};

// Handles "X is A.", "X is not A.", "All A (and B) people are C.", "Every N is A.",
// "If someone is A then they are B.", "A people are B." and "Is X A?".
class NaiveTranslator : public Translator {
 public:
  explicit NaiveTranslator(const text::PosHints* hints = nullptr) : hints_(hints) {}
  std::string_view name() const override { return "naive"; }
  Translation Translate(const Problem& p) const override;
  Skeleton Propose(const Problem& p) const override;

 private:
  const text::PosHints* hints_;
};

// Predicate name for a surface phrase: CamelCase of its content lemmas.
std::string SymbolFor(std::string_view surface, const text::PosHints* hints = nullptr);

// Lower-cased lemma sequence of a phrase, for comparing surfaces.
std::string NormalizeSurface(std::string_view surface, const text::PosHints* hints = nullptr);

enum class PromptStyle { kDirect, kPromptTuning, kMental };

std::string_view PromptStyleName(PromptStyle style);
PromptStyle ParsePromptStyle(std::string_view name);

struct LlmConfig {
  PromptStyle style = PromptStyle::kDirect;
  std::filesystem::path prompt_dir;
  std::size_t shots = 5;
  double temperature = 0.2;
};

void ValidateLlmConfig(const LlmConfig& config);

// Default prompt directory: SYMDRIFT_PROMPT_DIR, else the bundled prompts/.
std::filesystem::path DefaultPromptDir();

// Template "<style>.txt" with {{task}}, {{exemplars}} and {{problem}}
// placeholders; exemplars from "exemplars/<task kind>.txt", separated by lines
// holding only "---".
std::string RenderPrompt(const Problem& p, const LlmConfig& config);

// First fenced code block of a reply, if any.
std::optional<std::string> ExtractFencedBlock(std::string_view reply);

// Spans of the problem whose lemmas spell out a predicate name
// ("PopularShow" matches "popular show"). Used to align model output.
std::vector<Span> FindSurfaces(const Problem& p, std::string_view predicate);

class LlmTranslator : public Translator {
 public:
  LlmTranslator(std::shared_ptr<net::ChatClient> client, LlmConfig config)
      : client_(std::move(client)), config_(std::move(config)) {}
  std::string_view name() const override { return "llm"; }
  // Throws kClientError once the client gives up; a reply without a usable
  // program is recorded as a parse error.
  Translation Translate(const Problem& p) const override;
  // Asks the model, then opens every atom of its program as a slot whose
  // surface is the predicate name split into words.
  Skeleton Propose(const Problem& p) const override;
  bool deterministic() const override { return false; }

 private:
  std::shared_ptr<net::ChatClient> client_;
  LlmConfig config_;
};

// Opens every atom of `program` as a slot. `locate` gives the slot for the
// k-th atom of a formula from `unit` with the given predicate.
Skeleton SkeletonFromProgram(
    const fol::LogicProgram& program, const std::vector<std::size_t>& premise_units,
    std::size_t query_unit,
    const std::function<Slot(std::size_t unit, const std::string& predicate, std::size_t arity)>& locate);

}  // namespace symdrift::tr

#endif  // SYMDRIFT_TRANSLATE_H_

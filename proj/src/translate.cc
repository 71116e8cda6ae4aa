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

#include "symdrift/translate.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "symdrift/csp.h"
#include "symdrift/error.h"
#include "symdrift/text.h"

namespace symdrift::tr {

using text::Pos;
using text::Token;

std::string FillSlots(std::string_view formula,
                      const std::function<std::string(std::size_t, std::string_view)>& fill) {
  std::string out;
  std::size_t i = 0;
  while (i < formula.size()) {
    if (formula[i] != '{') {
      out += formula[i++];
      continue;
    }
    const std::size_t close = formula.find('}', i);
    const std::size_t open = close == std::string_view::npos ? close : close + 1;
    if (open >= formula.size() || formula[open] != '(') {
      throw Error(ErrorCode::kInvalidArgument, "malformed slot in '" + std::string(formula) + "'");
    }
    const std::size_t k = std::stoul(std::string(formula.substr(i + 1, close - i - 1)));
    const std::size_t end = formula.find(')', open);
    if (end == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "unterminated slot in '" + std::string(formula) + "'");
    }
    out += fill(k, formula.substr(open + 1, end - open - 1));
    i = end + 1;
  }
  return out;
}

std::string ProgramText(fol::Semantics semantics, const std::vector<std::string>& premises,
                        const std::optional<std::string>& query) {
  std::string out = "Mode: " + std::string(fol::SemanticsName(semantics)) + "\nPremises:\n";
  for (const std::string& p : premises) out += p + "\n";
  out += "Query:\n";
  if (query) out += *query + "\n";
  return out;
}

fol::Semantics SemanticsOf(TaskKind kind) {
  switch (kind) {
    case TaskKind::kOpenWorld: return fol::Semantics::kOpenWorld;
    case TaskKind::kClosedWorld: return fol::Semantics::kClosedWorld;
    case TaskKind::kCsp: return fol::Semantics::kCsp;
  }
  return fol::Semantics::kOpenWorld;
}

Skeleton Translator::Propose(const Problem&) const {
  throw Error(ErrorCode::kTranslationFailure, std::string(name()) + " translator proposes no skeleton");
}

Translation FillSkeleton(const Skeleton& skeleton, const std::function<std::string(const Slot&)>& name) {
  Translation t;
  auto fill = [&](const SkeletonUnit& u) {
    for (const Slot& s : u.slots) t.uses.push_back(SymbolUse{s.span, s.surface, name(s)});
    return FillSlots(u.formula, [&](std::size_t k, std::string_view args) {
      return name(u.slots.at(k)) + "(" + std::string(args) + ")";
    });
  };
  std::vector<std::string> premises;
  for (const SkeletonUnit& u : skeleton.premises) premises.push_back(fill(u));
  std::optional<std::string> query;
  if (skeleton.query) query = fill(*skeleton.query);
  t.program = ProgramText(skeleton.semantics, premises, query);
  t.raw = skeleton.raw.empty() ? *t.program : skeleton.raw;
  t.usage = skeleton.usage;
  return t;
}

Skeleton SkeletonFromProgram(
    const fol::LogicProgram& program, const std::vector<std::size_t>& premise_units, std::size_t query_unit,
    const std::function<Slot(std::size_t unit, const std::string& predicate, std::size_t arity)>& locate) {
  Skeleton out;
  out.semantics = program.semantics;
  auto open = [&](const fol::Formula& f, std::size_t unit) {
    SkeletonUnit u;
    u.unit = unit;
    fol::SymbolRegistry scratch = program.registry;
    std::vector<std::string> placeholders;
    const fol::Formula mapped = fol::MapAtoms(f, [&](fol::SymbolId pred, const std::vector<fol::Term>& args) {
      const fol::SymbolInfo& info = program.registry.Info(pred);
      u.slots.push_back(locate(unit, info.name, info.arity));
      const std::string placeholder =
          scratch.FreshName("Slot" + std::to_string(placeholders.size()) + "Placeholder", fol::SymbolKind::kPredicate);
      placeholders.push_back(placeholder);
      return fol::Formula::Atom(scratch.Declare(placeholder, info.arity, fol::SymbolKind::kPredicate), args);
    });
    std::string text = fol::RenderFormula(mapped, scratch);
    for (std::size_t k = 0; k < placeholders.size(); ++k) {
      const std::string from = placeholders[k] + "(";
      const std::size_t at = text.find(from);
      text.replace(at, from.size(), "{" + std::to_string(k) + "}(");
    }
    u.formula = std::move(text);
    return u;
  };
  for (std::size_t i = 0; i < program.premises.size(); ++i) {
    out.premises.push_back(open(program.premises[i], premise_units.at(i)));
  }
  if (program.query) out.query = open(*program.query, query_unit);
  return out;
}

// ---------------------------------------------------------------------------
// Surfaces and names

namespace {

std::vector<std::string> ContentLemmas(std::string_view surface, const text::PosHints* hints) {
  std::vector<std::string> all, open_class, content;
  for (const Token& t : text::Tokenize(surface, hints)) {
    if (t.pos == Pos::kPunct) continue;
    const std::string lemma = text::ToLower(t.lemma);
    all.push_back(lemma);
    if (!text::IsContentToken(t)) continue;
    open_class.push_back(lemma);
    if (!text::IsStopword(lemma)) content.push_back(lemma);
  }
  if (!content.empty()) return content;
  return open_class.empty() ? all : open_class;
}

}  // namespace

std::string SymbolFor(std::string_view surface, const text::PosHints* hints) {
  return text::CamelCase(ContentLemmas(surface, hints));
}

std::string NormalizeSurface(std::string_view surface, const text::PosHints* hints) {
  return text::Join(ContentLemmas(surface, hints), " ");
}

// ---------------------------------------------------------------------------
// Gold and split-adversary

namespace {

void RequireGold(const Problem& p) {
  if (!p.gold_logic) throw Error(ErrorCode::kMissingGold, "problem '" + p.id + "' has no gold logic");
  const bool diversified = !p.base_id.empty() || !p.provenance.empty();
  if (diversified && p.gold_concepts.empty()) {
    throw Error(ErrorCode::kMissingGold, "diversified problem '" + p.id + "' has no gold concept spans");
  }
}

Skeleton GoldSkeleton(const Problem& p) {
  RequireGold(p);
  if (p.task_kind == TaskKind::kCsp) {
    throw Error(ErrorCode::kTranslationFailure, "ordering puzzles carry no predicate slots");
  }
  const fol::LogicProgram program = fol::ParseProgram(*p.gold_logic);
  if (program.premises.size() != p.sentences.size()) {
    throw Error(ErrorCode::kMissingGold, "problem '" + p.id + "': gold premises do not line up with sentences");
  }
  std::vector<std::size_t> units(program.premises.size());
  for (std::size_t i = 0; i < units.size(); ++i) units[i] = i;
  std::set<Span> used;
  return SkeletonFromProgram(program, units, p.sentences.size(),
                             [&](std::size_t unit, const std::string& predicate, std::size_t arity) {
                               for (const auto& [span, id] : p.gold_concepts) {
                                 if (span.unit != unit || id != predicate || used.count(span)) continue;
                                 used.insert(span);
                                 return Slot{span, std::string(p.SpanText(span)), arity};
                               }
                               throw Error(ErrorCode::kMissingGold, "problem '" + p.id + "': no gold span for " +
                                                                        predicate + " in unit " +
                                                                        std::to_string(unit));
                             });
}

}  // namespace

Translation GoldTranslator::Translate(const Problem& p) const {
  RequireGold(p);
  Translation t;
  t.raw = *p.gold_logic;
  t.program = *p.gold_logic;
  for (const auto& [span, id] : p.gold_concepts) {
    t.uses.push_back(SymbolUse{span, std::string(p.SpanText(span)), id});
  }
  return t;
}

Skeleton GoldTranslator::Propose(const Problem& p) const { return GoldSkeleton(p); }

Skeleton SplitAdversaryTranslator::Propose(const Problem& p) const { return GoldSkeleton(p); }

Translation SplitAdversaryTranslator::Translate(const Problem& p) const {
  RequireGold(p);
  if (p.task_kind == TaskKind::kCsp) return GoldTranslator().Translate(p);
  const Skeleton skeleton = GoldSkeleton(p);
  const fol::LogicProgram gold = fol::ParseProgram(*p.gold_logic);
  std::set<std::string> taken;
  for (fol::SymbolId id : gold.registry.Symbols(fol::SymbolKind::kPredicate)) taken.insert(gold.registry.Name(id));
  // Gold symbol of each slot, recovered from the span's concept.
  std::map<std::string, std::map<std::string, std::string>> names;  // concept -> surface -> symbol
  auto name = [&](const Slot& s) -> std::string {
    const std::string& concept_id = p.gold_concepts.at(s.span);
    auto& by_surface = names[concept_id];
    const std::string key = NormalizeSurface(s.surface, hints_);
    if (const auto it = by_surface.find(key); it != by_surface.end()) return it->second;
    std::string symbol = concept_id;
    if (!by_surface.empty()) {
      const std::string base = SymbolFor(s.surface, hints_);
      symbol = base;
      for (int n = 2; taken.count(symbol); ++n) symbol = base + std::to_string(n);
      taken.insert(symbol);
    }
    by_surface.emplace(key, symbol);
    return symbol;
  };
  return FillSkeleton(skeleton, name);
}

// ---------------------------------------------------------------------------
// Naive templates

namespace {

struct Phrase {
  std::size_t begin, end;
};

// Splits "a, b and c" (within [begin, end) of `s`) into phrases, dropping
// leading articles.
std::vector<Phrase> SplitList(const std::string& s, std::size_t begin, std::size_t end) {
  static const std::regex sep(R"((\s*,\s*and\s+|\s*,\s*|\s+and\s+))");
  std::vector<Phrase> out;
  const std::string part = s.substr(begin, end - begin);
  std::size_t cursor = 0;
  auto push = [&](std::size_t b, std::size_t e) {
    std::string piece = part.substr(b, e - b);
    for (const char* article : {"a ", "an ", "the "}) {
      if (text::ToLower(piece).rfind(article, 0) == 0) {
        b += std::string_view(article).size();
        break;
      }
    }
    if (e > b) out.push_back({begin + b, begin + e});
  };
  for (std::sregex_iterator it(part.begin(), part.end(), sep), last; it != last; ++it) {
    push(cursor, static_cast<std::size_t>(it->position()));
    cursor = static_cast<std::size_t>(it->position() + it->length());
  }
  push(cursor, part.size());
  return out;
}

struct Builder {
  SkeletonUnit unit;
  const Sentence* sentence;

  std::string Atoms(const std::vector<Phrase>& phrases, const std::string& arg) {
    std::vector<std::string> parts;
    for (const Phrase& ph : phrases) {
      parts.push_back("{" + std::to_string(unit.slots.size()) + "}(" + arg + ")");
      unit.slots.push_back(Slot{Span{unit.unit, ph.begin, ph.end},
                                sentence->text.substr(ph.begin, ph.end - ph.begin), 1});
    }
    if (parts.size() == 1) return parts[0];
    return "(" + text::Join(parts, " & ") + ")";
  }
};

std::size_t Pos0(const std::smatch& m, int g) { return static_cast<std::size_t>(m.position(g)); }
std::size_t End0(const std::smatch& m, int g) { return static_cast<std::size_t>(m.position(g) + m.length(g)); }

std::optional<SkeletonUnit> MatchSentence(const Sentence& s, std::size_t unit_index) {
  static const std::regex all_rule(
      R"(^(?:All|Every|Each) (.+?) (?:people|persons|person|things|thing|ones|one) (?:are|is) (not )?(.+?)[.]?$)");
  static const std::regex noun_rule(R"(^(?:All|Every|Each) (.+?) (?:are|is) (not )?(.+?)[.]?$)");
  static const std::regex if_rule(
      R"(^If (?:someone|something|a person|a thing) is (.+?),? then (?:they|it|he|she) (?:are|is) (not )?(.+?)[.]?$)");
  static const std::regex bare_rule(R"(^([A-Z][a-z]*(?: [a-z]+)*?) (?:people|things) are (not )?(.+?)[.]?$)");
  static const std::regex fact(R"(^([A-Z][A-Za-z]*) is (not )?(.+?)[.?]?$)");
  static const std::regex question(R"(^Is ([A-Z][A-Za-z]*) (not )?(.+?)[?.]?$)");

  Builder b{SkeletonUnit{unit_index, "", {}}, &s};
  std::smatch m;
  const std::string& t = s.text;
  auto rule = [&](int body, int neg, int head) {
    const std::string lhs = b.Atoms(SplitList(t, Pos0(m, body), End0(m, body)), "x");
    std::string rhs = b.Atoms(SplitList(t, Pos0(m, head), End0(m, head)), "x");
    if (m.length(neg) > 0) rhs = "~" + rhs;
    b.unit.formula = "all x (" + lhs + " -> " + rhs + ")";
  };
  auto ground = [&](int name, int neg, int pred) {
    const std::string constant = m.str(name);
    b.unit.formula = b.Atoms(SplitList(t, Pos0(m, pred), End0(m, pred)), constant);
    if (m.length(neg) > 0) b.unit.formula = "~" + b.unit.formula;
  };
  if (std::regex_match(t, m, all_rule)) {
    rule(1, 2, 3);
  } else if (std::regex_match(t, m, noun_rule)) {
    rule(1, 2, 3);
  } else if (std::regex_match(t, m, if_rule)) {
    rule(1, 2, 3);
  } else if (std::regex_match(t, m, question)) {
    ground(1, 2, 3);
  } else if (std::regex_match(t, m, fact)) {
    ground(1, 2, 3);
  } else if (std::regex_match(t, m, bare_rule)) {
    rule(1, 2, 3);
  } else {
    return std::nullopt;
  }
  if (b.unit.slots.empty()) return std::nullopt;
  return b.unit;
}

}  // namespace

Skeleton NaiveTranslator::Propose(const Problem& p) const {
  if (p.task_kind == TaskKind::kCsp) {
    throw Error(ErrorCode::kTranslationFailure, "naive translator does not handle ordering puzzles");
  }
  Skeleton out;
  out.semantics = SemanticsOf(p.task_kind);
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    auto unit = MatchSentence(p.unit(u), u);
    if (!unit) {
      throw Error(ErrorCode::kTranslationFailure,
                  "no template matches unit " + std::to_string(u) + ": \"" + p.unit(u).text + "\"");
    }
    if (u + 1 < p.unit_count()) {
      out.premises.push_back(std::move(*unit));
    } else {
      out.query = std::move(*unit);
    }
  }
  return out;
}

Translation NaiveTranslator::Translate(const Problem& p) const {
  Skeleton skeleton;
  try {
    skeleton = Propose(p);
  } catch (const Error& e) {
    Translation t;
    t.parse_error = e.what();
    return t;
  }
  return FillSkeleton(skeleton, [&](const Slot& s) { return SymbolFor(s.surface, hints_); });
}

// ---------------------------------------------------------------------------
// Prompted model

std::string_view PromptStyleName(PromptStyle style) {
  switch (style) {
    case PromptStyle::kDirect: return "direct";
    case PromptStyle::kPromptTuning: return "prompt-tuning";
    case PromptStyle::kMental: return "mental";
  }
  return "direct";
}

PromptStyle ParsePromptStyle(std::string_view name) {
  if (name == "direct") return PromptStyle::kDirect;
  if (name == "prompt-tuning") return PromptStyle::kPromptTuning;
  if (name == "mental") return PromptStyle::kMental;
  throw Error(ErrorCode::kInvalidArgument, "unknown prompt style '" + std::string(name) + "'");
}

void ValidateLlmConfig(const LlmConfig& config) {
  if (!(config.temperature >= 0 && config.temperature <= 2)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must lie in [0, 2]");
  }
}

std::filesystem::path DefaultPromptDir() {
  if (const char* env = std::getenv("SYMDRIFT_PROMPT_DIR"); env && *env) return env;
  return std::filesystem::path(SYMDRIFT_DATA_DIR) / "prompts";
}

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kResourceMissing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
}

std::vector<std::string> SplitExemplars(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line, current;
  auto flush = [&]() {
    const std::size_t b = current.find_first_not_of("\n");
    if (b != std::string::npos) out.push_back(current.substr(b, current.find_last_not_of("\n") - b + 1));
    current.clear();
  };
  while (std::getline(in, line)) {
    if (line == "---") {
      flush();
    } else if (line.empty() || line[0] != '#' || !current.empty()) {
      current += line + "\n";
    }
  }
  flush();
  return out;
}

}  // namespace

std::string RenderPrompt(const Problem& p, const LlmConfig& config) {
  ValidateLlmConfig(config);
  const std::filesystem::path dir = config.prompt_dir.empty() ? DefaultPromptDir() : config.prompt_dir;
  std::string prompt = ReadFile(dir / (std::string(PromptStyleName(config.style)) + ".txt"));
  const std::vector<std::string> exemplars =
      SplitExemplars(ReadFile(dir / "exemplars" / (std::string(TaskKindName(p.task_kind)) + ".txt")));
  std::string shots;
  for (std::size_t i = 0; i < config.shots && i < exemplars.size(); ++i) {
    shots += "### Example " + std::to_string(i + 1) + "\n" + exemplars[i] + "\n\n";
  }
  ReplaceAll(prompt, "{{task}}", TaskKindName(p.task_kind));
  ReplaceAll(prompt, "{{exemplars}}", shots);
  ReplaceAll(prompt, "{{problem}}", p.Text());
  return prompt;
}

std::optional<std::string> ExtractFencedBlock(std::string_view reply) {
  const std::size_t open = reply.find("```");
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t body = reply.find('\n', open);
  if (body == std::string_view::npos) return std::nullopt;
  const std::size_t close = reply.find("```", body + 1);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(reply.substr(body + 1, close - body - 1));
}

std::vector<Span> FindSurfaces(const Problem& p, std::string_view predicate) {
  std::vector<std::string> words;
  for (const std::string& w : text::SplitCamelCase(predicate)) words.push_back(text::ToLower(w));
  std::vector<Span> out;
  if (words.empty()) return out;
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    const auto& tokens = p.unit(u).tokens;
    for (std::size_t a = 0; a + words.size() <= tokens.size(); ++a) {
      bool match = true;
      for (std::size_t k = 0; k < words.size() && match; ++k) {
        const Token& t = tokens[a + k];
        match = text::ToLower(t.lemma) == words[k] || text::ToLower(t.surface) == words[k];
      }
      if (match) out.push_back(Span{u, tokens[a].begin, tokens[a + words.size() - 1].end});
    }
  }
  return out;
}

Translation LlmTranslator::Translate(const Problem& p) const {
  const std::string prompt = RenderPrompt(p, config_);
  const net::ChatReply reply = client_->Complete({net::ChatMessage{"user", prompt}}, config_.temperature);
  Translation t;
  t.raw = reply.text;
  t.usage = reply.usage;
  const std::optional<std::string> block = ExtractFencedBlock(reply.text);
  if (!block) {
    t.parse_error = "no fenced program block in reply";
    return t;
  }
  try {
    if (p.task_kind == TaskKind::kCsp) {
      solver::ParseCspProblem(*block);
    } else {
      const fol::LogicProgram program = fol::ParseProgram(*block);
      for (fol::SymbolId id : program.registry.Symbols(fol::SymbolKind::kPredicate)) {
        const std::string& name = program.registry.Name(id);
        for (const Span& span : FindSurfaces(p, name)) {
          t.uses.push_back(SymbolUse{span, std::string(p.SpanText(span)), name});
        }
      }
    }
  } catch (const Error& e) {
    t.parse_error = e.what();
    return t;
  }
  t.program = *block;
  return t;
}

Skeleton LlmTranslator::Propose(const Problem& p) const {
  const Translation t = Translate(p);
  if (!t.program || p.task_kind == TaskKind::kCsp) {
    throw Error(ErrorCode::kTranslationFailure, t.parse_error.value_or("ordering puzzles carry no predicate slots"));
  }
  const fol::LogicProgram program = fol::ParseProgram(*t.program);
  std::map<std::string, std::size_t> next;  // predicate -> spans handed out
  Skeleton out = SkeletonFromProgram(
      program, std::vector<std::size_t>(program.premises.size(), 0), p.sentences.size(),
      [&](std::size_t, const std::string& predicate, std::size_t arity) {
        std::vector<std::string> words;
        for (const std::string& w : text::SplitCamelCase(predicate)) words.push_back(text::ToLower(w));
        const std::vector<Span> spans = FindSurfaces(p, predicate);
        std::size_t& i = next[predicate];
        const Span span = spans.empty() ? Span{} : spans[std::min(i, spans.size() - 1)];
        ++i;
        return Slot{span, text::Join(words, " "), arity};
      });
  out.raw = t.raw;
  out.usage = t.usage;
  return out;
}

}  // namespace symdrift::tr

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

#include "symdrift/mental.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "symdrift/error.h"
#include "symdrift/text.h"

namespace symdrift::mental {

using text::Pos;
using text::Token;

namespace {

// Oracle usage spent on the current thread; lets the driver attribute remote
// tokens to the problem it is translating while workers share one oracle.
thread_local net::Usage tl_oracle_usage;

std::string Key(std::string_view e) {
  std::string s = text::ToLower(e);
  const std::size_t b = s.find_first_not_of(" \t");
  const std::size_t last = s.find_last_not_of(" \t.");
  return b == std::string::npos ? std::string() : s.substr(b, last - b + 1);
}

}  // namespace

std::string_view DecisionName(Decision d) {
  switch (d) {
    case Decision::kExtend: return "extend";
    case Decision::kReuse: return "reuse";
    case Decision::kRefine: return "refine";
  }
  return "extend";
}

std::string Resolution::Label() const {
  return decomposition ? decomposition->base + " & " + decomposition->modifier : symbol;
}

std::string Resolution::Render(std::string_view args) const {
  const std::string a = "(" + std::string(args) + ")";
  if (!decomposition) return symbol + a;
  return "(" + decomposition->base + a + " & " + decomposition->modifier + a + ")";
}

// ---------------------------------------------------------------------------
// Table

std::optional<std::size_t> MentalTable::EntryOf(std::string_view expression) const {
  const std::string key = Key(expression);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& ex = entries_[i].expressions;
    if (std::find(ex.begin(), ex.end(), key) != ex.end()) return i;
  }
  return std::nullopt;
}

std::optional<Resolution> MentalTable::Lookup(std::string_view expression) const {
  const auto i = EntryOf(expression);
  if (!i) return std::nullopt;
  return Resolution{entries_[*i].symbol, entries_[*i].decomposition};
}

bool MentalTable::HasSymbol(std::string_view symbol) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.symbol == symbol; });
}

std::size_t MentalTable::AddEntry(std::string expression, std::string symbol, std::size_t arity) {
  entries_.push_back(Entry{entries_.size(), {Key(expression)}, std::move(symbol), arity, std::nullopt});
  return entries_.size() - 1;
}

void MentalTable::AddExpression(std::size_t entry, std::string expression) {
  auto& ex = entries_.at(entry).expressions;
  const std::string key = Key(expression);
  if (std::find(ex.begin(), ex.end(), key) == ex.end()) ex.push_back(key);
}

void MentalTable::Decompose(std::size_t entry, Decomposition decomposition) {
  entries_.at(entry).decomposition = std::move(decomposition);
}

void MentalTable::Audit() const {
  std::set<std::string> expressions, symbols;
  for (const Entry& e : entries_) {
    if (!symbols.insert(e.symbol).second) {
      throw Error(ErrorCode::kInvalidArgument, "symbol " + e.symbol + " held by two entries");
    }
    for (const std::string& x : e.expressions) {
      if (!expressions.insert(x).second) {
        throw Error(ErrorCode::kInvalidArgument, "expression '" + x + "' in two entries");
      }
    }
  }
}

std::string MentalTable::Render() const {
  std::string out;
  for (const Entry& e : entries_) {
    out += "{" + text::Join(e.expressions, ", ") + "} -> " +
           Resolution{e.symbol, e.decomposition}.Label() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon oracle

LexiconOracle::LexiconOracle(const lex::Resources* resources) : resources_(resources) {
  if (!resources_) throw Error(ErrorCode::kResourceMissing, "lexicon oracle needs lexical resources");
}

LexiconOracle::Bag LexiconOracle::BagOf(std::string_view e) const {
  Bag bag;
  const std::vector<Token> tokens = text::Tokenize(e, &resources_->synonyms);
  std::vector<const Token*> words;
  for (const Token& t : tokens) {
    if (text::IsContentToken(t)) words.push_back(&t);
  }
  if (words.size() == 1 && words[0]->pos == Pos::kPropn) bag.proper = true;
  std::vector<std::pair<std::string, std::string>> items;  // (group, lemma)
  for (const Token* t : words) {
    std::string lemma = text::ToLower(t->lemma);
    if (t->pos == Pos::kPropn) {
      items.emplace_back(lemma, lemma);
      continue;
    }
    if (text::IsStopword(lemma)) {
      // A bare category noun such as "the person".
      if (t->pos == Pos::kNoun && words.size() == 1) bag.hypernym = lemma;
      continue;
    }
    if (t->pos == Pos::kNoun) {
      if (auto adj = resources_->derivations.Base(lemma, "NOUN")) lemma = *adj;
    }
    items.emplace_back(resources_->synonyms.GroupOf(lemma), lemma);
  }
  std::sort(items.begin(), items.end());
  for (auto& [g, w] : items) {
    bag.groups.push_back(g);
    bag.words.push_back(w);
  }
  // A single noun whose category is known also matches that category.
  if (words.size() == 1 && words[0]->pos == Pos::kNoun && !bag.hypernym) {
    bag.hypernym = resources_->synonyms.Hypernym(text::ToLower(words[0]->lemma));
  }
  return bag;
}

bool LexiconOracle::Same(const Bag& a, const Bag& b) const {
  if (!a.groups.empty() && a.groups == b.groups) return true;
  // "the person" against a name, "the animal" against "the cat".
  auto category_of = [](const Bag& generic, const Bag& specific) {
    if (!generic.hypernym || !generic.groups.empty()) return false;
    if (specific.proper) return *generic.hypernym == "person";
    return !specific.groups.empty() && specific.hypernym == generic.hypernym;
  };
  return category_of(a, b) || category_of(b, a);
}

bool LexiconOracle::Equiv(std::string_view e, const std::vector<std::string>& expressions) {
  const Bag be = BagOf(e);
  for (const std::string& x : expressions) {
    if (Key(e) == Key(x) || Same(be, BagOf(x))) return true;
  }
  return false;
}

namespace {

// The one element of `big` (sorted) not matched by `small` (sorted), when
// small is a sub-multiset of big with exactly one to spare.
std::optional<std::size_t> SingleExtra(const std::vector<std::string>& big, const std::vector<std::string>& small) {
  if (small.empty() || big.size() != small.size() + 1) return std::nullopt;
  std::optional<std::size_t> extra;
  std::size_t j = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (j < small.size() && big[i] == small[j]) {
      ++j;
    } else if (extra) {
      return std::nullopt;
    } else {
      extra = i;
    }
  }
  if (j != small.size()) return std::nullopt;
  return extra;
}

}  // namespace

std::optional<Conflict> LexiconOracle::Conflicts(std::string_view e, const std::vector<std::string>& expressions) {
  const Bag be = BagOf(e);
  for (const std::string& x : expressions) {
    const Bag bx = BagOf(x);
    if (auto i = SingleExtra(be.groups, bx.groups)) return Conflict{Key(x), be.words[*i]};
    if (auto i = SingleExtra(bx.groups, be.groups)) return Conflict{Key(e), bx.words[*i]};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model oracle

namespace {

std::string ReadTemplate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kResourceMissing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fill(std::string t, std::string_view e, const std::vector<std::string>& expressions) {
  const std::string set = "{" + text::Join(expressions, ", ") + "}";
  for (const auto& [from, to] : {std::pair<std::string, std::string>{"{{expression}}", std::string(e)},
                                 std::pair<std::string, std::string>{"{{entry}}", set}}) {
    for (std::size_t at = t.find(from); at != std::string::npos; at = t.find(from, at + to.size())) {
      t.replace(at, from.size(), to);
    }
  }
  return t;
}

std::string CacheKey(const std::vector<std::string>& expressions) { return text::Join(expressions, "\x1f"); }

}  // namespace

LlmOracle::LlmOracle(std::shared_ptr<net::ChatClient> client, LlmOracleConfig config)
    : client_(std::move(client)), config_(std::move(config)) {
  const std::filesystem::path dir = config_.prompt_dir.empty() ? tr::DefaultPromptDir() : config_.prompt_dir;
  equiv_template_ = ReadTemplate(dir / "equiv.txt");
  conflict_template_ = ReadTemplate(dir / "conflict.txt");
}

std::string LlmOracle::Ask(const std::string& prompt) {
  net::ChatReply reply;
  try {
    reply = client_->Complete({net::ChatMessage{"user", prompt}}, config_.temperature);
  } catch (const Error& e) {
    throw Error(ErrorCode::kOracleFailure, std::string("oracle unreachable: ") + e.what());
  }
  std::lock_guard lock(mu_);
  usage_ += reply.usage;
  ++calls_;
  tl_oracle_usage += reply.usage;
  return reply.text;
}

bool LlmOracle::Equiv(std::string_view e, const std::vector<std::string>& expressions) {
  const auto key = std::make_pair(Key(e), CacheKey(expressions));
  {
    std::lock_guard lock(mu_);
    if (auto it = equiv_cache_.find(key); it != equiv_cache_.end()) return it->second;
  }
  static const std::regex answer(R"(^\s*(yes|no)\b)", std::regex::icase);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::string reply = Ask(Fill(equiv_template_, e, expressions));
    std::smatch m;
    if (std::regex_search(reply, m, answer)) {
      const bool yes = text::ToLower(m.str(1)) == "yes";
      std::lock_guard lock(mu_);
      equiv_cache_[key] = yes;
      return yes;
    }
  }
  throw Error(ErrorCode::kOracleFailure, "unparseable equivalence reply for '" + std::string(e) + "'");
}

std::optional<Conflict> LlmOracle::Conflicts(std::string_view e, const std::vector<std::string>& expressions) {
  const auto key = std::make_pair(Key(e), CacheKey(expressions));
  {
    std::lock_guard lock(mu_);
    if (auto it = conflict_cache_.find(key); it != conflict_cache_.end()) return it->second;
  }
  // "no", or "yes; atomic=<expression>; modifier=<word>".
  static const std::regex no(R"(^\s*no\b)", std::regex::icase);
  static const std::regex yes(R"(^\s*yes\s*;\s*atomic\s*=\s*([^;]+?)\s*;\s*modifier\s*=\s*(.+?)\s*$)",
                              std::regex::icase);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::string reply = Ask(Fill(conflict_template_, e, expressions));
    std::smatch m;
    std::optional<Conflict> result;
    if (std::regex_search(reply, m, yes)) {
      result = Conflict{Key(m.str(1)), Key(m.str(2))};
    } else if (!std::regex_search(reply, m, no)) {
      continue;
    }
    std::lock_guard lock(mu_);
    conflict_cache_[key] = result;
    return result;
  }
  throw Error(ErrorCode::kOracleFailure, "unparseable conflict reply for '" + std::string(e) + "'");
}

net::Usage LlmOracle::usage() const {
  std::lock_guard lock(mu_);
  return usage_;
}

std::size_t LlmOracle::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

// ---------------------------------------------------------------------------
// Algorithm

namespace {

std::string FreshSymbol(const TranslationState& st, std::string_view e) {
  std::string base = tr::SymbolFor(e, st.hints);
  if (base.empty()) base = "P";
  std::string name = base;
  for (int n = 2; st.table.HasSymbol(name) || st.program.registry.Find(name, fol::SymbolKind::kPredicate); ++n) {
    name = base + std::to_string(n);
  }
  return name;
}

Resolution ResolutionOf(const MentalTable& t, std::size_t entry) {
  const Entry& e = t.entries()[entry];
  return Resolution{e.symbol, e.decomposition};
}

Resolution Finish(TranslationState& st, const std::string& e, Decision d, std::size_t entry) {
  st.table.Record(LogEvent{d, e, entry});
  const Resolution r = ResolutionOf(st.table, entry);
  st.trace.push_back(TraceStep{e, d, r.Label(), st.revisions});
  return r;
}

// Modifiers split off a compound are only reused or extended.
Resolution Step(TranslationState& st, const std::string& e, std::size_t arity, Oracle& oracle,
                bool allow_refine = true) {
  if (auto i = st.table.EntryOf(e); i && st.table.entries()[*i].arity == arity) {
    return Finish(st, e, Decision::kReuse, *i);
  }
  const std::size_t n = st.table.entries().size();
  for (std::size_t i = 0; i < n; ++i) {
    const Entry& entry = st.table.entries()[i];
    if (entry.arity != arity || !oracle.Equiv(e, entry.expressions)) continue;
    st.table.AddExpression(i, e);
    return Finish(st, e, Decision::kReuse, i);
  }
  if (arity == 1 && allow_refine) {
    for (std::size_t i = 0; i < n; ++i) {
      const Entry& entry = st.table.entries()[i];
      if (entry.arity != 1 || entry.decomposition) continue;
      const std::optional<Conflict> c = oracle.Conflicts(e, entry.expressions);
      if (!c || Key(c->modifier).empty()) continue;
      const bool entry_is_atomic = std::find(entry.expressions.begin(), entry.expressions.end(), c->atomic) !=
                                   entry.expressions.end();
      if (entry_is_atomic) {
        // e is the compound: base from the entry, modifier from its own entry.
        const std::string base = entry.symbol;
        const Resolution mod = Step(st, Key(c->modifier), 1, oracle, false);
        const std::size_t idx = st.table.AddEntry(e, FreshSymbol(st, e), 1);
        st.table.Decompose(idx, Decomposition{base, mod.symbol});
        return Finish(st, e, Decision::kRefine, idx);
      }
      // e is the atomic part of an existing compound: decompose the compound
      // and rewrite its earlier atoms.
      const std::size_t idx = st.table.AddEntry(e, FreshSymbol(st, e), 1);
      const std::string base = st.table.entries()[idx].symbol;
      const std::string compound = st.table.entries()[i].symbol;
      const Resolution mod = Step(st, Key(c->modifier), 1, oracle, false);
      st.table.Decompose(i, Decomposition{base, mod.symbol});
      if (auto id = st.program.registry.Find(compound, fol::SymbolKind::kPredicate)) {
        st.program = fol::RefineSymbol(st.program, *id, base, mod.symbol);
        ++st.revisions;
      }
      return Finish(st, e, Decision::kRefine, idx);
    }
  }
  return Finish(st, e, Decision::kExtend, st.table.AddEntry(e, FreshSymbol(st, e), arity));
}

}  // namespace

Resolution ProcessExpression(TranslationState& st, std::string_view e, std::size_t arity, Oracle& oracle) {
  const std::string key = Key(e);
  if (key.empty()) throw Error(ErrorCode::kInvalidArgument, "empty expression");
  TranslationState backup = st;
  try {
    return Step(st, key, arity, oracle);
  } catch (const Error& err) {
    st = std::move(backup);
    throw;
  }
}

MentalResult TranslateWithMental(const Problem& p, const tr::Translator& base, Oracle& oracle,
                                 const text::PosHints* hints) {
  MentalResult out;
  if (p.task_kind == TaskKind::kCsp) {
    out.translation = base.Translate(p);
    return out;
  }
  tr::Skeleton skeleton;
  try {
    skeleton = base.Propose(p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kClientError || e.code() == ErrorCode::kOracleFailure) throw;
    out.translation.parse_error = e.what();
    return out;
  }
  const net::Usage before = tl_oracle_usage;
  TranslationState st;
  st.hints = hints;
  st.program.semantics = skeleton.semantics;
  try {
    auto place = [&](const tr::SkeletonUnit& u) {
      for (const tr::Slot& s : u.slots) ProcessExpression(st, s.surface, s.arity, oracle);
      // Re-resolve after the whole unit: a later slot may have refined an earlier one.
      const std::string text = tr::FillSlots(u.formula, [&](std::size_t k, std::string_view args) {
        return st.table.Lookup(u.slots.at(k).surface)->Render(args);
      });
      return fol::ParseFormula(text, st.program.registry);
    };
    for (const tr::SkeletonUnit& u : skeleton.premises) {
      fol::Formula f = place(u);
      st.program.premises.push_back(std::move(f));
    }
    if (skeleton.query) {
      fol::Formula f = place(*skeleton.query);
      st.program.query = std::move(f);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOracleFailure) throw;
    out.translation.parse_error = e.what();
    out.table = st.table;
    out.trace = st.trace;
    return out;
  }
  tr::Translation& t = out.translation;
  t.program = fol::RenderProgram(st.program);
  t.raw = skeleton.raw.empty() ? *t.program : skeleton.raw;
  t.usage = skeleton.usage;
  net::Usage spent = tl_oracle_usage;
  spent.tokens_in -= before.tokens_in;
  spent.tokens_out -= before.tokens_out;
  t.usage += spent;
  auto uses = [&](const tr::SkeletonUnit& u) {
    for (const tr::Slot& s : u.slots) {
      t.uses.push_back(tr::SymbolUse{s.span, s.surface, st.table.Lookup(s.surface)->Label()});
    }
  };
  for (const tr::SkeletonUnit& u : skeleton.premises) uses(u);
  if (skeleton.query) uses(*skeleton.query);
  out.table = std::move(st.table);
  out.trace = std::move(st.trace);
  return out;
}

}  // namespace symdrift::mental

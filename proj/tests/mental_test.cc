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

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "support/fixtures.h"
#include "support/stub_client.h"
#include "symdrift/diversify.h"
#include "symdrift/error.h"
#include "symdrift/metrics.h"
#include "symdrift/similarity.h"
#include "symdrift/solver.h"
#include "symdrift/synthetic.h"
#include "symdrift/text.h"

namespace symdrift::mental {
namespace {

using testing::KindFixture;
using testing::MakeProblem;
using testing::Res;
using testing::StubChatClient;

const text::PosHints* Hints() { return &Res().synonyms; }

// Scripted relations for exercising the algorithm independently of the lexicon.
class TableOracle : public Oracle {
 public:
  std::set<std::pair<std::string, std::string>> equiv;                   // symmetric pairs
  std::map<std::pair<std::string, std::string>, Conflict> conflicts;  // (e, member) -> result
  int calls = 0;

  bool Equiv(std::string_view e, const std::vector<std::string>& xs) override {
    ++calls;
    for (const auto& x : xs) {
      if (x == e || equiv.count({std::string(e), x}) || equiv.count({x, std::string(e)})) return true;
    }
    return false;
  }
  std::optional<Conflict> Conflicts(std::string_view e, const std::vector<std::string>& xs) override {
    ++calls;
    for (const auto& x : xs) {
      if (auto it = conflicts.find({std::string(e), x}); it != conflicts.end()) return it->second;
    }
    return std::nullopt;
  }
};

// Equivalence read off the gold concept spans: two surfaces are equivalent iff
// they occur as the same concept.
class ProvenanceOracle : public Oracle {
 public:
  explicit ProvenanceOracle(const Problem& p) {
    for (const auto& [span, concept_id] : p.gold_concepts) {
      concept_of_[text::ToLower(std::string(p.SpanText(span)))] = concept_id;
    }
  }
  bool Equiv(std::string_view e, const std::vector<std::string>& xs) override {
    const auto a = concept_of_.find(std::string(e));
    if (a == concept_of_.end()) return false;
    return std::any_of(xs.begin(), xs.end(), [&](const std::string& x) {
      const auto b = concept_of_.find(x);
      return b != concept_of_.end() && b->second == a->second;
    });
  }
  std::optional<Conflict> Conflicts(std::string_view, const std::vector<std::string>&) override {
    return std::nullopt;
  }

 private:
  std::map<std::string, std::string> concept_of_;
};

Problem Diversify(const Problem& p) {
  static const sim::FallbackScorer scorer(Res().synonyms);
  div::DiversifyConfig config;
  config.scorer = &scorer;
  config.resources = &Res();
  return div::DiversifyProblem(p, config).problem;
}

std::set<std::set<std::string>> Partition(const MentalTable& t) {
  std::set<std::set<std::string>> out;
  for (const Entry& e : t.entries()) out.insert(std::set<std::string>(e.expressions.begin(), e.expressions.end()));
  return out;
}

std::set<std::string> Predicates(const fol::LogicProgram& program) {
  std::set<std::string> out;
  for (fol::SymbolId id : program.registry.Symbols(fol::SymbolKind::kPredicate)) {
    out.insert(program.registry.Name(id));
  }
  return out;
}

TEST(ProcessExpression, EmptyTableExtends) {
  TranslationState st;
  TableOracle oracle;
  const Resolution r = ProcessExpression(st, "kind", 1, oracle);
  EXPECT_EQ(r.symbol, "Kind");
  EXPECT_FALSE(r.decomposition);
  ASSERT_EQ(st.trace.size(), 1u);
  EXPECT_EQ(st.trace[0].decision, Decision::kExtend);
  EXPECT_EQ(st.table.log().back().decision, Decision::kExtend);
}

TEST(ProcessExpression, EquivalentExpressionReuses) {
  TranslationState st;
  TableOracle oracle;
  oracle.equiv.insert({"the pupil", "student"});
  ProcessExpression(st, "student", 1, oracle);
  const Resolution r = ProcessExpression(st, "the pupil", 1, oracle);
  EXPECT_EQ(r.symbol, "Student");
  EXPECT_EQ(st.trace.back().decision, Decision::kReuse);
  ASSERT_TRUE(st.table.Lookup("the pupil"));
  EXPECT_EQ(st.table.Lookup("the pupil")->symbol, "Student");
  EXPECT_FALSE(st.table.Lookup("teacher"));
  EXPECT_EQ(st.table.Render(), "{student, the pupil} -> Student\n");
}

TEST(ProcessExpression, CompoundAfterBaseRefines) {
  TranslationState st;
  TableOracle oracle;
  oracle.conflicts[{"popular show", "show"}] = Conflict{"show", "popular"};
  ProcessExpression(st, "show", 1, oracle);
  const Resolution r = ProcessExpression(st, "popular show", 1, oracle);
  ASSERT_TRUE(r.decomposition);
  EXPECT_EQ(r.decomposition->base, "Show");
  EXPECT_EQ(r.decomposition->modifier, "Popular");
  EXPECT_EQ(r.Render("x"), "(Show(x) & Popular(x))");
  EXPECT_EQ(st.trace.back().decision, Decision::kRefine);
  EXPECT_NO_THROW(st.table.Audit());
}

TEST(ProcessExpression, BaseAfterCompoundRewritesEarlierAtoms) {
  TranslationState st;
  TableOracle oracle;
  oracle.conflicts[{"show", "popular show"}] = Conflict{"show", "popular"};
  const Resolution first = ProcessExpression(st, "popular show", 1, oracle);
  st.program.premises.push_back(fol::ParseFormula(first.Render("Friends"), st.program.registry));
  ProcessExpression(st, "show", 1, oracle);
  EXPECT_EQ(st.revisions, 1u);
  EXPECT_FALSE(st.program.registry.Find("PopularShow", fol::SymbolKind::kPredicate));
  EXPECT_EQ(fol::RenderFormula(st.program.premises[0], st.program.registry), "Show(Friends) & Popular(Friends)");
  // The compound's surface still resolves, now to its decomposition.
  const auto r = st.table.Lookup("popular show");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->Label(), "Show & Popular");
}

TEST(ProcessExpression, FreshSymbolsAvoidCollisions) {
  TranslationState st;
  TableOracle oracle;
  ProcessExpression(st, "kind", 1, oracle);
  ProcessExpression(st, "kind", 2, oracle);  // same surface, other arity
  EXPECT_EQ(st.table.entries().size(), 2u);
  EXPECT_EQ(st.table.entries()[1].symbol, "Kind2");
}

TEST(ProcessExpression, EmptyExpressionRejected) {
  TranslationState st;
  TableOracle oracle;
  EXPECT_THROW(ProcessExpression(st, "  ", 1, oracle), Error);
}

TEST(ProcessExpression, ExactMatchNeedsNoOracle) {
  TranslationState st;
  TableOracle oracle;
  ProcessExpression(st, "kind", 1, oracle);
  const int before = oracle.calls;
  ProcessExpression(st, "Kind.", 1, oracle);
  EXPECT_EQ(oracle.calls, before);
  EXPECT_EQ(st.trace.back().decision, Decision::kReuse);
}

TEST(LexiconOracle, Relations) {
  LexiconOracle oracle(&Res());
  EXPECT_TRUE(oracle.Equiv("kind", {"benevolent"}));
  EXPECT_FALSE(oracle.Equiv("kind", {"tall"}));
  EXPECT_TRUE(oracle.Equiv("kind", {"kind"}));
  const auto c = oracle.Conflicts("popular show", {"show"});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->atomic, "show");
  EXPECT_EQ(c->modifier, "popular");
  const auto reverse = oracle.Conflicts("show", {"popular show"});
  ASSERT_TRUE(reverse);
  EXPECT_EQ(reverse->atomic, "show");
  EXPECT_FALSE(oracle.Conflicts("kind", {"tall"}));
}

TEST(LexiconOracle, PersonCategoryMatchesNames) {
  LexiconOracle oracle(&Res());
  EXPECT_TRUE(oracle.Equiv("the person", {"Anne"}));
  EXPECT_FALSE(oracle.Equiv("the person", {"kind"}));
}

TEST(LexiconOracle, NeedsResources) {
  try {
    LexiconOracle oracle(nullptr);
    FAIL() << "expected ResourceMissing";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceMissing);
  }
}

TEST(LexiconOracle, EquivAndConflictNeverBothHold) {
  LexiconOracle oracle(&Res());
  std::vector<std::string> pool;
  for (const std::string& a : synth::AttributePool()) {
    pool.push_back(a);
    for (const std::string& s : Res().synonyms.Synonyms(a, text::Pos::kAdj)) pool.push_back(s);
  }
  pool.insert(pool.end(), {"show", "popular show", "famous show", "person", "the person", "kind person"});
  for (const auto& a : pool) {
    EXPECT_TRUE(oracle.Equiv(a, {a})) << a;
    for (const auto& b : pool) {
      EXPECT_FALSE(oracle.Equiv(a, {b}) && oracle.Conflicts(a, {b})) << a << " / " << b;
    }
  }
}

TEST(TranslateWithMental, GoldSkeletonCollapsesSurfaces) {
  const Problem d = Diversify(KindFixture());
  LexiconOracle oracle(&Res());
  const MentalResult m = TranslateWithMental(d, tr::GoldTranslator(), oracle, Hints());
  ASSERT_TRUE(m.translation.program) << m.translation.parse_error.value_or("");
  const fol::LogicProgram program = fol::ParseProgram(*m.translation.program);
  EXPECT_EQ(Predicates(program), (std::set<std::string>{"Kind", "Smart"}));
  EXPECT_EQ(solver::EnumerateModels(program).value, solver::Outcome::kProved);
  EXPECT_EQ(m.table.Render(), "{kind, benevolent} -> Kind\n{smart, clever} -> Smart\n");
}

TEST(TranslateWithMental, NaiveWithoutTableDrifts) {
  const Problem d = Diversify(KindFixture());
  const tr::Translation t = tr::NaiveTranslator(Hints()).Translate(d);
  const fol::LogicProgram program = fol::ParseProgram(*t.program);
  EXPECT_TRUE(Predicates(program).count("Benevolent"));
  EXPECT_EQ(solver::EnumerateModels(program).value, solver::Outcome::kUnknown);

  LexiconOracle oracle(&Res());
  const MentalResult m = TranslateWithMental(d, tr::NaiveTranslator(Hints()), oracle, Hints());
  const fol::LogicProgram fixed = fol::ParseProgram(*m.translation.program);
  EXPECT_EQ(Predicates(fixed), (std::set<std::string>{"Kind", "Smart"}));
  EXPECT_EQ(solver::EnumerateModels(fixed).value, solver::Outcome::kProved);
}

TEST(TranslateWithMental, PopularShowTrace) {
  const Problem p = MakeProblem("show", {"Friends is a popular show.", "Every show is entertaining."},
                                "Friends is entertaining.");
  LexiconOracle oracle(&Res());
  const MentalResult m = TranslateWithMental(p, tr::NaiveTranslator(Hints()), oracle, Hints());
  ASSERT_TRUE(m.translation.program);
  EXPECT_EQ(*m.translation.program,
            "Mode: open-world\nPremises:\nShow(Friends) & Popular(Friends)\nall x (Show(x) -> Entertaining(x))\nQuery:\n"
            "Entertaining(Friends)\n");
  std::vector<std::pair<std::string, Decision>> steps;
  for (const auto& s : m.trace) steps.emplace_back(s.expression, s.decision);
  const std::vector<std::pair<std::string, Decision>> want = {{"popular show", Decision::kExtend},
                                                              {"popular", Decision::kExtend},
                                                              {"show", Decision::kRefine},
                                                              {"entertaining", Decision::kExtend},
                                                              {"entertaining", Decision::kReuse}};
  EXPECT_EQ(steps, want);
  EXPECT_EQ(m.trace.back().revisions, 1u);
  const auto r = m.table.Lookup("popular show");
  ASSERT_TRUE(r && r->decomposition);
  EXPECT_EQ(r->decomposition->base, "Show");
  EXPECT_EQ(r->decomposition->modifier, "Popular");
  const auto proved = solver::EnumerateModels(fol::ParseProgram(*m.translation.program));
  EXPECT_EQ(proved.value, solver::Outcome::kProved);
}

TEST(TranslateWithMental, EmptyProblemGivesEmptyProgram) {
  Problem p = MakeProblem("empty", {}, "");
  p.gold_logic = "Premises:\n";
  LexiconOracle oracle(&Res());
  const MentalResult m = TranslateWithMental(p, tr::GoldTranslator(), oracle, Hints());
  ASSERT_TRUE(m.translation.program) << m.translation.parse_error.value_or("");
  EXPECT_TRUE(m.table.empty());
  EXPECT_TRUE(m.trace.empty());
  const fol::LogicProgram program = fol::ParseProgram(*m.translation.program);
  EXPECT_TRUE(program.premises.empty());
  EXPECT_FALSE(program.query);
}

TEST(TranslateWithMental, SkeletonFailureIsParseError) {
  const Problem p = MakeProblem("x", {"Gibberish here."}, "Anne is kind.");
  LexiconOracle oracle(&Res());
  const MentalResult m = TranslateWithMental(p, tr::NaiveTranslator(Hints()), oracle, Hints());
  EXPECT_FALSE(m.translation.program);
  EXPECT_TRUE(m.translation.parse_error);
}

// ---------------------------------------------------------------------------
// Properties

std::vector<std::string> ExpressionPool() {
  std::vector<std::string> pool;
  for (const std::string& a : synth::AttributePool()) {
    pool.push_back(a);
    for (const std::string& s : Res().synonyms.Synonyms(a, text::Pos::kAdj)) pool.push_back(s);
  }
  return pool;
}

TEST(MentalProperty, AuditHoldsAfterEveryStep) {
  LexiconOracle oracle(&Res());
  std::vector<std::string> pool = ExpressionPool();
  pool.insert(pool.end(), {"show", "popular show", "famous show", "person", "the person", "kind person"});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    TranslationState st;
    st.hints = Hints();
    const std::size_t n = 3 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      ProcessExpression(st, pool[rng() % pool.size()], 1, oracle);
      ASSERT_NO_THROW(st.table.Audit());
    }
    EXPECT_EQ(st.trace.size(), st.table.log().size());
  }
}

TEST(MentalProperty, ReuseIsIdempotent) {
  LexiconOracle oracle(&Res());
  const std::vector<std::string> pool = ExpressionPool();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    TranslationState st;
    for (int i = 0; i < 6; ++i) ProcessExpression(st, pool[rng() % pool.size()], 1, oracle);
    const std::string e = pool[rng() % pool.size()];
    const Resolution first = ProcessExpression(st, e, 1, oracle);
    const std::string table = st.table.Render();
    const Resolution again = ProcessExpression(st, e, 1, oracle);
    EXPECT_EQ(first.Label(), again.Label());
    EXPECT_EQ(st.table.Render(), table);
    EXPECT_EQ(st.trace.back().decision, Decision::kReuse);
  }
}

TEST(MentalProperty, RefinementLeavesNoRetiredSymbol) {
  LexiconOracle oracle(&Res());
  const std::vector<std::string> modifiers = {"popular", "famous", "big", "red", "quiet"};
  const std::vector<std::string> nouns = {"show", "cat", "dog", "car"};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::string mod = modifiers[rng() % modifiers.size()];
    const std::string noun = nouns[rng() % nouns.size()];
    const Problem p = MakeProblem("r", {"Rex is a " + mod + " " + noun + ".", "Every " + noun + " is entertaining."},
                                  "Rex is entertaining.");
    const MentalResult m = TranslateWithMental(p, tr::NaiveTranslator(Hints()), oracle, Hints());
    ASSERT_TRUE(m.translation.program) << m.translation.parse_error.value_or("");
    const fol::LogicProgram program = fol::ParseProgram(*m.translation.program);
    const std::string retired = text::CamelCase({mod, noun});
    EXPECT_FALSE(program.registry.Find(retired, fol::SymbolKind::kPredicate)) << *m.translation.program;
    EXPECT_EQ(solver::EnumerateModels(program).value, solver::Outcome::kProved);
  }
}

TEST(MentalProperty, PerfectOracleGivesZeroDrift) {
  synth::SyntheticConfig config;
  config.n_problems = 40;
  const auto problems = synth::GenerateSynthetic(config, Hints());
  std::vector<metrics::TranslationRecord> records;
  for (const Problem& base : problems) {
    const Problem d = Diversify(base);
    ProvenanceOracle oracle(d);
    const MentalResult m = TranslateWithMental(d, tr::NaiveTranslator(Hints()), oracle, Hints());
    ASSERT_TRUE(m.translation.program);
    metrics::TranslationRecord r;
    r.problem_id = d.id;
    r.alignment = metrics::AlignSymbols(m.translation, d).alignment;
    EXPECT_TRUE(metrics::Consistent(r)) << d.Text();
    records.push_back(std::move(r));
  }
  EXPECT_EQ(metrics::ComputeSds(records).value, 0.0);
}

TEST(MentalProperty, PartitionIndependentOfOrder) {
  LexiconOracle oracle(&Res());
  std::vector<std::string> pool = ExpressionPool();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::string> sample(pool.begin(), pool.begin() + 12);
    TranslationState a;
    for (const auto& e : sample) ProcessExpression(a, e, 1, oracle);
    std::shuffle(sample.begin(), sample.end(), rng);
    TranslationState b;
    for (const auto& e : sample) ProcessExpression(b, e, 1, oracle);
    EXPECT_EQ(Partition(a.table), Partition(b.table));
  }
}

// ---------------------------------------------------------------------------
// Model oracle

TEST(LlmOracle, CachesDecisions) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"Yes."});
  LlmOracle oracle(client, LlmOracleConfig{});
  EXPECT_TRUE(oracle.Equiv("kind", {"benevolent"}));
  EXPECT_TRUE(oracle.Equiv("kind", {"benevolent"}));
  EXPECT_EQ(client->calls(), 1u);
  EXPECT_NE(client->prompts()[0].find("kind"), std::string::npos);
  EXPECT_NE(client->prompts()[0].find("{benevolent}"), std::string::npos);
  EXPECT_DOUBLE_EQ(client->temperatures()[0], 0.0);
}

TEST(LlmOracle, MalformedReplyRetriesOnceThenFails) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"perhaps", "hard to say"});
  LlmOracle oracle(client, LlmOracleConfig{});
  try {
    oracle.Equiv("kind", {"tall"});
    FAIL() << "expected OracleFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOracleFailure);
  }
  EXPECT_EQ(client->calls(), 2u);
}

TEST(LlmOracle, RetryRecovers) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"hmm", "no"});
  LlmOracle oracle(client, LlmOracleConfig{});
  EXPECT_FALSE(oracle.Equiv("kind", {"tall"}));
  EXPECT_EQ(client->calls(), 2u);
}

TEST(LlmOracle, ConflictReplyParsed) {
  auto client = std::make_shared<StubChatClient>(
      std::vector<std::string>{"yes; atomic=show; modifier=popular", "no"});
  LlmOracle oracle(client, LlmOracleConfig{});
  const auto c = oracle.Conflicts("popular show", {"show"});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->atomic, "show");
  EXPECT_EQ(c->modifier, "popular");
  EXPECT_FALSE(oracle.Conflicts("kind", {"tall"}));
}

TEST(LlmOracle, UsageSumsOverCalls) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"no"}, net::Usage{7, 2});
  LlmOracle oracle(client, LlmOracleConfig{});
  oracle.Equiv("a", {"b"});
  oracle.Equiv("a", {"c"});
  oracle.Conflicts("a", {"b"});
  EXPECT_EQ(oracle.calls(), 3u);
  EXPECT_EQ(oracle.usage(), (net::Usage{21, 6}));
  EXPECT_EQ(oracle.usage(), client->total());
}

TEST(LlmOracle, UnreachableClientLeavesStateUnchanged) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"no"});
  LlmOracle oracle(client, LlmOracleConfig{});
  TranslationState st;
  ProcessExpression(st, "kind", 1, oracle);
  const std::string before = st.table.Render();
  const std::size_t steps = st.trace.size();
  client->set_fail(true);
  try {
    ProcessExpression(st, "tall", 1, oracle);
    FAIL() << "expected OracleFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOracleFailure);
  }
  EXPECT_EQ(st.table.Render(), before);
  EXPECT_EQ(st.trace.size(), steps);
}

TEST(LlmOracle, TokensAttributedToTranslation) {
  auto client = std::make_shared<StubChatClient>(std::vector<std::string>{"no"}, net::Usage{3, 1});
  LlmOracle oracle(client, LlmOracleConfig{});
  const MentalResult m = TranslateWithMental(KindFixture(), tr::NaiveTranslator(Hints()), oracle, Hints());
  ASSERT_TRUE(m.translation.program);
  EXPECT_EQ(m.translation.usage, oracle.usage());
  EXPECT_GT(oracle.calls(), 0u);
}

}  // namespace
}  // namespace symdrift::mental

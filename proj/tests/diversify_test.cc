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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "support/fixtures.h"
#include "symdrift/error.h"
#include "symdrift/fol.h"
#include "symdrift/solver.h"
#include "symdrift/synthetic.h"

namespace symdrift::div {
namespace {

using testing::MakeProblem;
using testing::Res;

// Deterministic pseudo-similarity in [0, 1] for exercising the threshold.
class HashScorer : public sim::Scorer {
 public:
  double Score(std::string_view a, std::string_view b) const override {
    if (a == b) return 1.0;
    const std::size_t h = std::hash<std::string_view>{}(a) ^ (std::hash<std::string_view>{}(b) * 31);
    return static_cast<double>(h % 1000) / 1000.0;
  }
  std::string_view name() const override { return "hash"; }
};

TEST(IdentifyRepeated, CountsAcrossQuestion) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "All kind people are smart."}, "Bob is tall.");
  const ConceptInventory inv = IdentifyRepeated(p);
  ASSERT_EQ(inv.entries.size(), 1u);
  EXPECT_EQ(inv.entries.at("kind").frequency, 2u);
  EXPECT_EQ(inv.entries.at("kind").occurrences.size(), 2u);
}

TEST(IdentifyRepeated, EmptyWhenNothingRepeats) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Bob is tall."}, "Carl is rich.");
  EXPECT_TRUE(IdentifyRepeated(p).empty());
}

TEST(IdentifyRepeated, CompoundAndHead) {
  const Problem p = MakeProblem(
      "p", {"Friends is a popular show.", "Every popular show has fans.", "Bob likes the show."},
      "Bob likes a popular show.");
  const ConceptInventory inv = IdentifyRepeated(p);
  ASSERT_TRUE(inv.entries.count("popular show"));
  ASSERT_TRUE(inv.entries.count("show"));
  EXPECT_EQ(inv.entries.at("popular show").frequency, 3u);
  EXPECT_EQ(inv.entries.at("show").frequency, 4u);
  // Sites prefer the compound; the bare head is its own site.
  std::size_t compound_sites = 0, head_sites = 0;
  for (const auto& [span, id] : inv.sites) {
    compound_sites += id == "popular show";
    head_sites += id == "show";
  }
  EXPECT_EQ(compound_sites, 3u);
  EXPECT_EQ(head_sites, 1u);
}

TEST(IdentifyRepeated, CompoundTwiceHeadOnce) {
  const Problem p = MakeProblem("p", {"Anne likes a popular show.", "Bob likes a popular show."},
                                "Carl watches the show.");
  const ConceptInventory inv = IdentifyRepeated(p);
  EXPECT_EQ(inv.entries.at("popular show").frequency, 2u);
  EXPECT_EQ(inv.entries.at("show").frequency, 3u);
  // "popular" never appears outside the compound.
  EXPECT_FALSE(inv.entries.count("popular"));
}

TEST(IdentifyRepeated, EveryEntryRepeats) {
  for (const Problem& p : synth::GenerateSynthetic({.n_problems = 20}, &Res().synonyms)) {
    for (const auto& [id, c] : IdentifyRepeated(p).entries) {
      EXPECT_GE(c.frequency, 2u) << id;
      EXPECT_EQ(c.frequency, c.occurrences.size()) << id;
    }
  }
}

TEST(BuildVariants, WordLevelSynonyms) {
  const Problem p = testing::KindFixture();
  const VariantSet v = BuildVariants(p, IdentifyRepeated(p), &Res(), nullptr);
  std::vector<std::string> texts;
  for (const Variant& x : v.variants.at("kind")) {
    EXPECT_EQ(x.level, Level::kWord);
    EXPECT_EQ(x.source, Source::kSynonymLexicon);
    texts.push_back(x.text);
  }
  EXPECT_EQ(texts, (std::vector<std::string>{"benevolent", "caring"}));
}

TEST(BuildVariants, PhraseLevelParaphrase) {
  const Problem p = MakeProblem("p", {"Anne is the parent of Bob.", "Bob is the parent of Carl."},
                                "Anne is the parent of Carl.");
  InventoryConfig cfg;
  for (const auto& para : Res().paraphrases.entries()) cfg.phrases.push_back(para.phrase);
  const ConceptInventory inv = IdentifyRepeated(p, cfg);
  const VariantSet v = BuildVariants(p, inv, &Res(), nullptr);
  ASSERT_TRUE(v.variants.count("be the parent of"));
  const Variant& first = v.variants.at("be the parent of").front();
  EXPECT_EQ(first.text, "is a parent to");
  EXPECT_EQ(first.level, Level::kPhrase);
  EXPECT_EQ(first.source, Source::kParaphraseTable);
}

TEST(BuildVariants, RewriterFallbackOrFlag) {
  const Problem p = MakeProblem("p", {"All zorp people are blick.", "Anne is zorp."}, "Anne is blick.");
  const ConceptInventory inv = IdentifyRepeated(p);
  ASSERT_TRUE(inv.entries.count("zorp"));
  const RuleRewriter rewriter(&Res());
  const VariantSet with = BuildVariants(p, inv, &Res(), &rewriter);
  ASSERT_FALSE(with.variants.at("zorp").empty());
  EXPECT_EQ(with.variants.at("zorp").front().level, Level::kSentence);
  EXPECT_EQ(with.variants.at("zorp").front().text, "If someone is zorp then they are blick.");

  const VariantSet without = BuildVariants(p, inv, &Res(), nullptr);
  EXPECT_TRUE(without.flagged.count("zorp"));
}

TEST(BuildVariants, MissingResources) {
  const Problem p = testing::KindFixture();
  try {
    BuildVariants(p, IdentifyRepeated(p), nullptr, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceMissing);
  }
}

TEST(BuildVariants, VariantsRespectInvariants) {
  const RuleRewriter rewriter(&Res());
  for (const Problem& p : synth::GenerateSynthetic({.n_problems = 20}, &Res().synonyms)) {
    const ConceptInventory inv = IdentifyRepeated(p);
    for (const auto& [id, list] : BuildVariants(p, inv, &Res(), &rewriter).variants) {
      for (const Variant& v : list) {
        EXPECT_NE(v.text, id);
        if (v.level != Level::kSentence) EXPECT_LE(text::SplitWords(v.text).size(), 4u);
      }
    }
  }
}

TEST(RuleRewriter, Templates) {
  const RuleRewriter r(&Res());
  auto texts = [&](const std::string& s) {
    std::vector<std::string> out;
    for (const SentenceRewrite& w : r.Rewrite(MakeSentence(s, &Res().synonyms))) out.push_back(w.text);
    return out;
  };
  EXPECT_EQ(texts("All kind people are smart."),
            (std::vector<std::string>{"If someone is kind then they are smart.", "Kind people are smart."}));
  EXPECT_EQ(texts("If someone is kind then they are smart.")[0], "All kind people are smart.");
  EXPECT_EQ(texts("The cat sees the dog.")[0], "The dog is seen by the cat.");
}

TEST(GenerateCandidates, SynonymKeptAboveTheta) {
  Problem p = MakeProblem("p", {"All kind people are smart.", "Anne is kind."}, "Anne is smart.");
  const ConceptInventory inv = IdentifyRepeated(p);
  VariantSet v;
  v.variants["kind"] = {Variant{"benevolent", Level::kWord, Source::kSynonymLexicon, std::nullopt, {}}};
  const sim::FallbackScorer scorer(Res().synonyms);
  const auto c = GenerateCandidates(p, 0, inv, v, 0.9, scorer);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c[0].original);
  EXPECT_EQ(c[0].text, "All kind people are smart.");
  EXPECT_EQ(c[1].text, "All benevolent people are smart.");
  EXPECT_DOUBLE_EQ(c[1].score, 1.0);
}

TEST(GenerateCandidates, LowScoreFiltered) {
  Problem p = MakeProblem("p", {"Anne is kind.", "Bob is kind."}, "Anne is tall.");
  const ConceptInventory inv = IdentifyRepeated(p);
  VariantSet v;
  // "tall" is not a synonym of "kind": {anne, be, kind} vs {anne, be, tall} scores 0.5.
  v.variants["kind"] = {Variant{"tall", Level::kWord, Source::kSynonymLexicon, std::nullopt, {}}};
  const sim::FallbackScorer scorer(Res().synonyms);
  EXPECT_EQ(GenerateCandidates(p, 0, inv, v, 0.9, scorer).size(), 1u);
  EXPECT_EQ(GenerateCandidates(p, 0, inv, v, 0.5, scorer).size(), 2u);
}

TEST(GenerateCandidates, NoSitesOnlyOriginal) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Bob is kind.", "Carl is tall."}, "Anne is rich.");
  const ConceptInventory inv = IdentifyRepeated(p);
  const sim::FallbackScorer scorer(Res().synonyms);
  const auto c = GenerateCandidates(p, 2, inv, BuildVariants(p, inv, &Res(), nullptr), 0.9, scorer);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].original);
}

TEST(GenerateCandidates, ThetaBounds) {
  const Problem p = testing::KindFixture();
  const ConceptInventory inv = IdentifyRepeated(p);
  const sim::FallbackScorer scorer(Res().synonyms);
  for (double bad : {0.0, -0.1, 1.5}) {
    EXPECT_THROW(GenerateCandidates(p, 0, inv, {}, bad, scorer), Error);
  }
}

TEST(GenerateCandidates, ReinflectsPluralsAndCase) {
  const Problem p = MakeProblem("p", {"Cats are furry.", "Bob has two cats."}, "Bob has a cat.");
  const ConceptInventory inv = IdentifyRepeated(p);
  const sim::FallbackScorer scorer(Res().synonyms);
  const VariantSet v = BuildVariants(p, inv, &Res(), nullptr);
  std::vector<std::string> texts;
  for (const Candidate& c : GenerateCandidates(p, 0, inv, v, 0.5, scorer)) texts.push_back(c.text);
  EXPECT_NE(std::find(texts.begin(), texts.end(), "Felines are furry."), texts.end());
}

// Threshold monotonicity: a stricter θ never yields more candidates.
TEST(GenerateCandidates, ThresholdMonotone) {
  const HashScorer scorer;
  const RuleRewriter rewriter(&Res());
  for (const Problem& p : synth::GenerateSynthetic({.n_problems = 30, .seed = 3}, &Res().synonyms)) {
    const ConceptInventory inv = IdentifyRepeated(p);
    const VariantSet v = BuildVariants(p, inv, &Res(), &rewriter);
    for (std::size_t u = 0; u < p.unit_count(); ++u) {
      std::size_t previous = SIZE_MAX;
      for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const std::size_t n = GenerateCandidates(p, u, inv, v, theta, scorer).size();
        EXPECT_LE(n, previous) << p.id << " unit " << u << " theta " << theta;
        EXPECT_GE(n, 1u);
        previous = n;
      }
    }
  }
}

// Hand-built candidate with one use per (concept, form) pair.
Candidate Cand(const std::string& text, std::vector<std::pair<std::string, std::string>> uses) {
  Candidate c;
  c.text = text;
  for (auto& [id, form] : uses) c.uses.push_back(SiteUse{id, form, 0, 0, {}});
  return c;
}

TEST(Assemble, TwoSentencesSplitForms) {
  const Problem base = MakeProblem("p", {"Anne is kind."}, "Bob is kind.");
  std::vector<std::vector<Candidate>> c = {
      {Cand("Anne is kind.", {{"kind", "kind"}}), Cand("Anne is benevolent.", {{"kind", "benevolent"}})},
      {Cand("Bob is kind.", {{"kind", "kind"}}), Cand("Bob is benevolent.", {{"kind", "benevolent"}})}};
  const DiversifiedProblem d = Assemble(base, c);
  EXPECT_EQ(d.repeats, 0u);
  EXPECT_EQ(d.choice, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.problem.sentences[0].text, "Anne is kind.");
  EXPECT_EQ(d.problem.question.text, "Bob is benevolent.");
  EXPECT_EQ(d.intensity, 1u);
}

TEST(Assemble, SingleCandidatesKeepOriginals) {
  const Problem base = MakeProblem("p", {"Anne is kind."}, "Bob is tall.");
  const DiversifiedProblem d = Assemble(
      base, {{Cand("Anne is kind.", {{"kind", "kind"}}), Cand("Anne is nice.", {{"kind", "nice"}})},
             {Cand("Bob is tall.", {{"tall", "tall"}})}});
  EXPECT_EQ(d.choice, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(d.intensity, 0u);
}

TEST(Assemble, ThreeSentencesTwoForms) {
  const Problem base = MakeProblem("p", {"a.", "b."}, "c.");
  std::vector<std::vector<Candidate>> c(3);
  for (std::size_t u = 0; u < 3; ++u) {
    c[u] = {Cand("k" + std::to_string(u), {{"kind", "kind"}}), Cand("b" + std::to_string(u), {{"kind", "benevolent"}})};
  }
  const DiversifiedProblem d = Assemble(base, c);
  EXPECT_EQ(d.repeats, 1u);
  std::map<std::string, std::size_t> forms;
  for (std::size_t u = 0; u < 3; ++u) ++forms[c[u][d.choice[u]].uses[0].form];
  EXPECT_EQ(forms.size(), 2u);
  EXPECT_EQ(std::max(forms["kind"], forms["benevolent"]), 2u);
}

TEST(Assemble, RejectsMismatchedLists) {
  const Problem base = MakeProblem("p", {"a."}, "b.");
  EXPECT_THROW(Assemble(base, {{Cand("a.", {})}}), Error);
  EXPECT_THROW(Assemble(base, {{Cand("a.", {})}, {}}), Error);
}

// Assembly matches the brute-force minimum on small random instances.
TEST(Assemble, OptimalOnSmallInstances) {
  std::mt19937 rng(11);
  const std::vector<std::string> forms = {"a", "b", "c"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t units = 1 + rng() % 4;
    Problem base;
    base.id = "t";
    for (std::size_t u = 0; u + 1 < units; ++u) base.sentences.push_back(MakeSentence("s."));
    base.question = MakeSentence("q.");
    std::vector<std::vector<Candidate>> c(units);
    for (std::size_t u = 0; u < units; ++u) {
      const std::size_t n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::string, std::string>> uses;
        for (const char* concept_id : {"x", "y"}) {
          if (rng() % 2) uses.emplace_back(concept_id, forms[rng() % forms.size()]);
        }
        c[u].push_back(Cand(std::to_string(u) + "/" + std::to_string(i), uses));
      }
    }
    std::size_t best = SIZE_MAX;
    std::vector<std::size_t> pick(units, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t u) {
      if (u == units) {
        best = std::min(best, RepeatCount(c, pick));
        return;
      }
      for (std::size_t i = 0; i < c[u].size(); ++i) {
        pick[u] = i;
        walk(u + 1);
      }
    };
    walk(0);
    EXPECT_EQ(Assemble(base, c).repeats, best) << "trial " << trial;
  }
}

TEST(DiversifyProblem, KindFixtureEndToEnd) {
  const Problem p = testing::KindFixture();
  const DiversifiedProblem d = DiversifyProblem(p, {.resources = &Res()});
  EXPECT_GE(d.intensity, 1u);
  EXPECT_EQ(d.repeats, 0u);
  EXPECT_EQ(d.problem.sentences[0].text, "Anne is kind.");
  EXPECT_EQ(d.problem.sentences[1].text, "All benevolent people are smart.");
  EXPECT_EQ(d.problem.question.text, "Anne is clever.");
  EXPECT_EQ(d.problem.base_id, "kind");
  ASSERT_EQ(d.problem.provenance.at("kind").size(), 2u);
  EXPECT_EQ(d.problem.provenance.at("kind")[1].surface, "benevolent");
  std::map<std::string, std::size_t> per_concept;
  for (const auto& [span, id] : d.problem.gold_concepts) ++per_concept[id];
  EXPECT_EQ(per_concept, (std::map<std::string, std::size_t>{{"Kind", 2}, {"Smart", 2}}));
}

TEST(DiversifyProblem, ZeroIntensityIsIdentity) {
  const Problem p = testing::KindFixture();
  const DiversifiedProblem d = DiversifyProblem(p, {.intensity = 0, .resources = &Res()});
  EXPECT_EQ(d.intensity, 0u);
  for (std::size_t u = 0; u < p.unit_count(); ++u) EXPECT_EQ(d.problem.unit(u).text, p.unit(u).text);
  EXPECT_EQ(d.problem.gold_concepts, p.gold_concepts);
}

TEST(DiversifyProblem, NoRepeatsFlag) {
  const Problem p = MakeProblem("p", {"Anne is kind."}, "Bob is tall.");
  const DiversifiedProblem d = DiversifyProblem(p, {.resources = &Res()});
  EXPECT_TRUE(d.flags.count("no-repeats"));
  EXPECT_EQ(d.intensity, 0u);
}

TEST(DiversifyProblem, Errors) {
  const Problem p = testing::KindFixture();
  EXPECT_THROW(DiversifyProblem(p, {}), Error);
  EXPECT_THROW(DiversifyProblem(p, {.intensity = 9, .resources = &Res()}), Error);
}

std::vector<Problem> SyntheticSample(std::size_t n, std::uint64_t seed) {
  return synth::GenerateSynthetic({.n_problems = n, .seed = seed}, &Res().synonyms);
}

TEST(DiversifyProblem, StructuralInvariants) {
  for (const Problem& p : SyntheticSample(40, 5)) {
    const DiversifiedProblem d = DiversifyProblem(p, {.resources = &Res()});
    ASSERT_EQ(d.problem.sentences.size(), p.sentences.size());
    std::size_t changed = 0;
    for (std::size_t u = 0; u < p.unit_count(); ++u) changed += d.problem.unit(u).text != p.unit(u).text;
    EXPECT_EQ(d.intensity, changed);
    for (const auto& [id, entries] : d.problem.provenance) {
      for (const ProvenanceEntry& e : entries) EXPECT_EQ(d.problem.SpanText(e.span), e.surface) << p.id;
    }
    EXPECT_NO_THROW(ValidateProblem(d.problem));
  }
}

// Every gold span survives and holds the original word or a lexicon synonym,
// so the gold program, and hence its verdict, is unchanged.
TEST(DiversifyProblem, GoldLogicPreserved) {
  for (const Problem& p : SyntheticSample(60, 9)) {
    const DiversifiedProblem d = DiversifyProblem(p, {.resources = &Res()});
    ASSERT_EQ(d.problem.gold_concepts.size(), p.gold_concepts.size()) << p.id;
    for (const auto& [span, id] : d.problem.gold_concepts) {
      const std::string word = text::ToLower(std::string(d.problem.SpanText(span)));
      EXPECT_TRUE(Res().synonyms.SameGroup(word, text::ToLower(id))) << p.id << ": " << word << " for " << id;
    }
    const auto original = solver::ForwardChainCwa(fol::ParseProgram(*p.gold_logic));
    const auto after = solver::ForwardChainCwa(fol::ParseProgram(*d.problem.gold_logic));
    EXPECT_EQ(original.value, after.value);
  }
}

TEST(DiversifyProblem, IntensityMonotone) {
  for (const Problem& p : SyntheticSample(25, 13)) {
    std::size_t previous = 0;
    for (std::size_t k = 0; k <= p.unit_count(); ++k) {
      const DiversifiedProblem d = DiversifyProblem(p, {.intensity = k, .resources = &Res()});
      std::map<std::string, std::set<std::string>> forms;
      for (const auto& [id, entries] : d.problem.provenance) {
        for (const ProvenanceEntry& e : entries) forms[id].insert(text::ToLower(e.surface));
      }
      std::size_t distinct = 0;
      for (const auto& [id, set] : forms) distinct += set.size();
      EXPECT_GE(distinct, previous) << p.id << " k=" << k;
      EXPECT_LE(d.intensity, k);
      previous = distinct;
    }
  }
}

TEST(DiversifyProblem, Deterministic) {
  for (const Problem& p : SyntheticSample(10, 21)) {
    const DiversifiedProblem a = DiversifyProblem(p, {.resources = &Res()});
    const DiversifiedProblem b = DiversifyProblem(p, {.resources = &Res()});
    EXPECT_EQ(ProblemToJson(a.problem), ProblemToJson(b.problem));
    EXPECT_EQ(a.choice, b.choice);
  }
}

TEST(PerturbExploratory, ThirdPerson) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Anne is tall."}, "Anne is rich.");
  const PerturbedProblem out = PerturbExploratory(p, {PerturbationType::kThirdPerson}, 1, 0, Res());
  ASSERT_EQ(out.applied.size(), 1u);
  EXPECT_EQ(out.applied[0].before, "Anne");
  EXPECT_EQ(out.applied[0].after, "The person");
  EXPECT_EQ(out.problem.sentences[0].text, "Anne is kind.");
  EXPECT_EQ(out.problem.SpanText(out.applied[0].span), "The person");
}

TEST(PerturbExploratory, SynonymBudgetOne) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Bob is smart."}, "Anne is tall.");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PerturbedProblem out = PerturbExploratory(p, {PerturbationType::kSynonym}, 1, seed, Res());
    ASSERT_EQ(out.applied.size(), 1u);
    std::size_t changed = 0;
    for (std::size_t u = 0; u < p.unit_count(); ++u) changed += out.problem.unit(u).text != p.unit(u).text;
    EXPECT_EQ(changed, 1u);
  }
}

TEST(PerturbExploratory, PosShift) {
  const Problem p = MakeProblem("p", {"Anne is kind."}, "Bob is red.");
  const PerturbedProblem out = PerturbExploratory(p, {PerturbationType::kPosShift}, 1, 0, Res());
  EXPECT_EQ(out.problem.sentences[0].text, "Anne shows kindness.");
}

TEST(PerturbExploratory, SyntacticVoice) {
  const Problem p = MakeProblem("p", {"The cat sees the dog."}, "The dog is red.");
  const PerturbedProblem out = PerturbExploratory(p, {PerturbationType::kSyntactic}, 1, 0, Res());
  EXPECT_EQ(out.problem.sentences[0].text, "The dog is seen by the cat.");
}

TEST(PerturbExploratory, BudgetTwoAndErrors) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Anne is smart."}, "Anne is tall.");
  const std::set<PerturbationType> all = {PerturbationType::kThirdPerson, PerturbationType::kSynonym,
                                          PerturbationType::kPosShift};
  EXPECT_EQ(PerturbExploratory(p, all, 2, 4, Res()).applied.size(), 2u);
  EXPECT_THROW(PerturbExploratory(p, all, 3, 4, Res()), Error);
  const Problem bare = MakeProblem("p", {"Zorp blicks."}, "Quux?");
  try {
    PerturbExploratory(bare, {PerturbationType::kThirdPerson}, 1, 0, Res());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoApplicableSite);
  }
}

TEST(PerturbExploratory, DeterministicInSeed) {
  const Problem p = MakeProblem("p", {"Anne is kind.", "Anne is smart.", "Bob is big."}, "Anne is tall.");
  const std::set<PerturbationType> types = {PerturbationType::kSynonym, PerturbationType::kThirdPerson};
  EXPECT_EQ(ProblemToJson(PerturbExploratory(p, types, 2, 77, Res()).problem),
            ProblemToJson(PerturbExploratory(p, types, 2, 77, Res()).problem));
}

}  // namespace
}  // namespace symdrift::div

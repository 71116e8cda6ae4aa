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

#include "symdrift/solver.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "support/generators.h"
#include "symdrift/error.h"

namespace symdrift::solver {
namespace {

using fol::ParseProgram;

Verdict Enum(std::string_view text) { return EnumerateModels(ParseProgram(text)); }
Verdict Res(std::string_view text, std::size_t steps = kDefaultMaxSteps) {
  return ProveResolution(ParseProgram(text), steps);
}
Verdict Cwa(std::string_view text) { return ForwardChainCwa(ParseProgram(text)); }

constexpr std::string_view kModusPonens =
    "Premises:\nKind(Anne)\nall x (Kind(x) -> Smart(x))\nQuery:\n";

std::string With(std::string_view base, std::string_view query) {
  return std::string(base) + std::string(query) + "\n";
}

TEST(EnumerateModels, Examples) {
  EXPECT_EQ(Enum(With(kModusPonens, "Smart(Anne)")).value, Outcome::kProved);
  EXPECT_EQ(Enum(With(kModusPonens, "Tall(Anne)")).value, Outcome::kUnknown);
  EXPECT_EQ(Enum("Premises:\n~Kind(Anne)\nQuery:\nKind(Anne)\n").value, Outcome::kDisproved);
}

TEST(EnumerateModels, ExistentialWitnessesMakeDomainExact) {
  // Only true if the domain has an element besides Anne.
  EXPECT_EQ(Enum("Premises:\nexists x ~Kind(x)\nKind(Anne)\nQuery:\nall x Kind(x)\n").value,
            Outcome::kDisproved);
  EXPECT_EQ(Enum("Premises:\nKind(Anne)\nQuery:\nall x Kind(x)\n").value, Outcome::kUnknown);
  EXPECT_EQ(Enum("Premises:\nKind(Anne)\nQuery:\nexists x Kind(x)\n").value, Outcome::kProved);
}

TEST(EnumerateModels, InconsistentPremisesProveAnything) {
  EXPECT_EQ(Enum("Premises:\nKind(Anne)\n~Kind(Anne)\nQuery:\nTall(Bob)\n").value, Outcome::kProved);
}

TEST(EnumerateModels, DomainGuard) {
  std::string text = "Premises:\n";
  for (int i = 0; i < 9; ++i) text += "P" + std::to_string(i % 8) + "(C" + std::to_string(i) + ")\n";
  text += "Query:\nP0(C1)\n";
  try {
    Enum(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomainTooLarge);
  }
}

TEST(EnumerateModels, ExtraConstantsWidenDomain) {
  const auto p = ParseProgram("Premises:\nKind(Anne)\nQuery:\nall x Kind(x)\n");
  const std::vector<std::string> extra = {"Bob"};
  const Verdict v = EnumerateModels(p, extra);
  EXPECT_EQ(v.value, Outcome::kUnknown);
  EXPECT_GT(v.steps, 0u);
}

// Plain loop over every interpretation of a universal-only program over its
// constants, checking the pruned search.
Outcome BruteForce(const fol::LogicProgram& p) {
  const auto consts = p.registry.Symbols(fol::SymbolKind::kConstant);
  const auto preds = p.registry.Symbols(fol::SymbolKind::kPredicate);
  const std::size_t n = consts.size() * preds.size();
  std::function<bool(const fol::Formula&, std::uint64_t, std::map<std::string, std::size_t>&)> eval =
      [&](const fol::Formula& f, std::uint64_t m, std::map<std::string, std::size_t>& env) -> bool {
    using K = fol::Formula::Kind;
    switch (f.kind()) {
      case K::kAtom: {
        const fol::Term& t = f.args()[0];
        const std::size_t c = t.is_variable()
                                  ? env.at(t.variable())
                                  : std::find(consts.begin(), consts.end(), t.constant()) - consts.begin();
        const std::size_t pi = std::find(preds.begin(), preds.end(), f.predicate()) - preds.begin();
        return (m >> (pi * consts.size() + c)) & 1;
      }
      case K::kNot: return !eval(f.operand(), m, env);
      case K::kAnd: return eval(f.left(), m, env) && eval(f.right(), m, env);
      case K::kOr: return eval(f.left(), m, env) || eval(f.right(), m, env);
      case K::kImplies: return !eval(f.left(), m, env) || eval(f.right(), m, env);
      case K::kIff: return eval(f.left(), m, env) == eval(f.right(), m, env);
      default: {
        bool all = true;
        for (std::size_t c = 0; c < consts.size(); ++c) {
          env[f.variable()] = c;
          all &= eval(f.body(), m, env);
        }
        env.erase(f.variable());
        return all;
      }
    }
  };
  bool seen_true = false;
  bool seen_false = false;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::map<std::string, std::size_t> env;
    if (!std::all_of(p.premises.begin(), p.premises.end(),
                     [&](const fol::Formula& f) { return eval(f, m, env); })) {
      continue;
    }
    (eval(*p.query, m, env) ? seen_true : seen_false) = true;
  }
  if (!seen_false) return Outcome::kProved;
  if (!seen_true) return Outcome::kDisproved;
  return Outcome::kUnknown;
}

TEST(Property, EnumerationMatchesBruteForce) {
  for (unsigned seed = 0; seed < 300; ++seed) {
    std::mt19937 rng(seed);
    fol::LogicProgram p = testing::RandomHornProgram(rng);
    p.semantics = fol::Semantics::kOpenWorld;
    // Add a negative fact so that Disproved occurs.
    p.premises.push_back(fol::Formula::Not(p.premises.back().is_atom() ? p.premises.back()
                                                                       : *p.query));
    ASSERT_EQ(EnumerateModels(p).value, BruteForce(p)) << "seed " << seed << "\n" << fol::RenderProgram(p);
  }
}

TEST(ProveResolution, Examples) {
  EXPECT_EQ(Res(With(kModusPonens, "Smart(Anne)")).value, Outcome::kProved);
  EXPECT_EQ(Res("Premises:\n~Kind(Anne)\nQuery:\nKind(Anne)\n").value, Outcome::kDisproved);
  const Verdict unknown = Res(With(kModusPonens, "Tall(Anne)"));
  EXPECT_EQ(unknown.value, Outcome::kUnknown);
  EXPECT_FALSE(unknown.limit_hit);
}

TEST(ProveResolution, DepthFiveChain) {
  std::string text = "Premises:\nA0(Cat)\n";
  for (int i = 0; i < 5; ++i) {
    text += "all x (A" + std::to_string(i) + "(x) -> A" + std::to_string(i + 1) + "(x))\n";
  }
  text += "Query:\nA5(Cat)\n";
  EXPECT_EQ(Res(text).value, Outcome::kProved);
  EXPECT_EQ(Enum(text).value, Outcome::kProved);
}

TEST(ProveResolution, StepLimitGivesUnknown) {
  // A non-terminating saturation: the resolvents keep growing.
  std::string text = "Premises:\n";
  text += "all x all y all z (Rel(x, y) & Rel(y, z) -> Rel(x, z))\n";
  text += "all x all y (Rel(x, y) -> Rel(y, x))\n";
  for (const char* a : {"Ann", "Bo", "Cy", "Di", "Ed"}) {
    for (const char* b : {"Ann", "Bo", "Cy", "Di", "Ed"}) {
      if (std::string(a) < b) text += std::string("Rel(") + a + ", " + b + ") | Odd(" + a + ")\n";
    }
  }
  text += "Query:\nUnrelated(Ann)\n";
  const Verdict v = Res(text, 10);
  EXPECT_EQ(v.value, Outcome::kUnknown);
  EXPECT_TRUE(v.limit_hit);
  EXPECT_LE(v.steps, 20u);
}

TEST(ProveResolution, PropagatesSkolemLimit) {
  try {
    Res("Premises:\nall x exists y Likes(x, y)\nQuery:\nLikes(Anne, Bob)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedSkolemFunction);
  }
}

TEST(ProveResolution, Deterministic) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    std::mt19937 a(seed);
    std::mt19937 b(seed);
    const auto pa = testing::RandomProgram(a);
    const auto pb = testing::RandomProgram(b);
    EXPECT_EQ(ProveResolution(pa), ProveResolution(pb));
    EXPECT_EQ(EnumerateModels(pa), EnumerateModels(pb));
  }
}

TEST(Property, ResolutionAgreesWithEnumeration) {
  std::map<Outcome, int> seen;
  for (unsigned seed = 0; seed < 600; ++seed) {
    std::mt19937 rng(seed);
    const fol::LogicProgram p = testing::RandomProgram(rng);
    const Verdict oracle = EnumerateModels(p);
    const Verdict res = ProveResolution(p);
    ++seen[oracle.value];
    if (oracle.value == Outcome::kUnknown) {
      ASSERT_EQ(res.value, Outcome::kUnknown) << "seed " << seed << "\n" << fol::RenderProgram(p);
    } else {
      ASSERT_EQ(res.value, oracle.value) << "seed " << seed << "\n" << fol::RenderProgram(p);
    }
  }
  EXPECT_GT(seen[Outcome::kProved], 30);
  EXPECT_GT(seen[Outcome::kDisproved], 30);
  EXPECT_GT(seen[Outcome::kUnknown], 30);
}

TEST(ForwardChainCwa, Examples) {
  constexpr std::string_view base =
      "Mode: closed-world\nPremises:\nKind(Anne)\nall x (Kind(x) -> Smart(x))\nQuery:\n";
  EXPECT_EQ(Cwa(With(base, "Smart(Anne)")).value, Outcome::kTrue);
  EXPECT_EQ(Cwa(With(base, "Smart(Bob)")).value, Outcome::kFalse);
  EXPECT_EQ(Cwa(With(base, "~Smart(Bob)")).value, Outcome::kTrue);
  EXPECT_EQ(Cwa(With(base, "Smart(Anne) & ~Kind(Anne)")).value, Outcome::kFalse);
  try {
    Cwa("Mode: closed-world\nPremises:\nall x (Kind(x) -> Smart(x) | Tall(x))\nQuery:\nSmart(Anne)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHorn);
  }
}

TEST(Saturate, DepthIsDerivationHeight) {
  const auto p = ParseProgram(
      "Mode: closed-world\nPremises:\nA(Cat)\nB(Cat)\nall x (A(x) -> C(x))\n"
      "all x (C(x) & B(x) -> D(x))\nall x (A(x) -> D(x))\nQuery:\nD(Cat)\n");
  const Saturation s = Saturate(p);
  const auto cat = *p.registry.Find("Cat", fol::SymbolKind::kConstant);
  auto depth = [&](const char* pred) {
    return s.depth.at({*p.registry.Find(pred, fol::SymbolKind::kPredicate), {cat}});
  };
  EXPECT_EQ(depth("A"), 0u);
  EXPECT_EQ(depth("C"), 1u);
  EXPECT_EQ(depth("D"), 1u);  // shortest derivation wins
  EXPECT_EQ(s.rounds, 2u);
}

TEST(Saturate, HeadOnlyVariableRangesOverConstants) {
  const auto p = ParseProgram("Mode: closed-world\nPremises:\nall x Thing(x)\nKind(Anne)\nTall(Bob)\n");
  EXPECT_EQ(Saturate(p).depth.size(), 4u);
}

// Naive least-fixed-point computation over all ground instances.
std::set<GroundAtom> NaiveFixpoint(const fol::LogicProgram& p) {
  const auto consts = p.registry.Symbols(fol::SymbolKind::kConstant);
  std::set<GroundAtom> model;
  bool changed = true;
  auto ground = [](const fol::Formula& atom, fol::SymbolId c) {
    GroundAtom g{atom.predicate(), {}};
    for (const fol::Term& t : atom.args()) g.second.push_back(t.is_variable() ? c : t.constant());
    return g;
  };
  while (changed) {
    changed = false;
    for (const fol::Formula& prem : p.premises) {
      const fol::Formula* core = &prem;
      while (core->kind() == fol::Formula::Kind::kForAll) core = &core->body();
      for (fol::SymbolId c : consts) {
        bool body_holds = true;
        const fol::Formula* head = core;
        if (core->kind() == fol::Formula::Kind::kImplies) {
          head = &core->right();
          std::vector<const fol::Formula*> stack = {&core->left()};
          while (!stack.empty()) {
            const fol::Formula* f = stack.back();
            stack.pop_back();
            if (f->kind() == fol::Formula::Kind::kAnd) {
              stack.push_back(&f->left());
              stack.push_back(&f->right());
            } else if (!model.count(ground(*f, c))) {
              body_holds = false;
            }
          }
        }
        if (body_holds) changed |= model.insert(ground(*head, c)).second;
      }
    }
  }
  return model;
}

TEST(Property, CwaMatchesNaiveFixpoint) {
  for (unsigned seed = 0; seed < 500; ++seed) {
    std::mt19937 rng(seed);
    const fol::LogicProgram p = testing::RandomHornProgram(rng);
    const std::set<GroundAtom> expected = NaiveFixpoint(p);
    const Saturation s = Saturate(p);
    std::set<GroundAtom> got;
    for (const auto& [atom, depth] : s.depth) got.insert(atom);
    ASSERT_EQ(got, expected) << "seed " << seed << "\n" << fol::RenderProgram(p);

    const fol::Formula& q = *p.query;
    const bool negative = q.kind() == fol::Formula::Kind::kNot;
    const fol::Formula& atom = negative ? q.operand() : q;
    GroundAtom g{atom.predicate(), {atom.args()[0].constant()}};
    const bool expect_true = expected.count(g) != static_cast<std::size_t>(negative);
    ASSERT_EQ(ForwardChainCwa(p).value, expect_true ? Outcome::kTrue : Outcome::kFalse);
  }
}

TEST(OutcomeName, Names) {
  EXPECT_EQ(OutcomeName(Outcome::kProved), "proved");
  EXPECT_EQ(OutcomeName(Outcome::kOption), "option");
}

}  // namespace
}  // namespace symdrift::solver

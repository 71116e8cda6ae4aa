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

#include "symdrift/cnf.h"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::fol {
namespace {

// Clause count beyond which distribution is abandoned.
constexpr std::size_t kMaxClauses = 200000;

// Negation normal form with variables already renamed to unique integers.
struct Nnf {
  enum class Kind { kLiteral, kAnd, kOr, kForAll, kExists } kind;
  Literal literal;
  std::uint32_t variable = 0;
  std::vector<std::shared_ptr<Nnf>> children;
};
using NnfPtr = std::shared_ptr<Nnf>;

class Converter {
 public:
  explicit Converter(SymbolRegistry& registry) : registry_(registry) {}

  void Add(const Formula& f) {
    if (!FreeVariables(f).empty()) {
      throw Error(ErrorCode::kTypeError, "clause conversion needs a closed formula: " +
                                             RenderFormula(f, registry_));
    }
    std::map<std::string, std::uint32_t> scope;
    NnfPtr nnf = ToNnf(f, true, scope);
    std::map<std::uint32_t, CnfTerm> substitution;
    nnf = Skolemize(nnf, false, substitution);
    for (Clause& c : Distribute(nnf)) {
      if (Normalize(c)) out_.clauses.push_back(std::move(c));
    }
  }

  ClauseSet Finish() {
    // Standardize apart: every clause gets fresh variable numbers.
    std::uint32_t next = 0;
    for (Clause& c : out_.clauses) {
      std::map<std::uint32_t, std::uint32_t> rename;
      for (Literal& l : c) {
        for (CnfTerm& t : l.args) {
          if (!t.is_variable) continue;
          auto [it, inserted] = rename.emplace(t.variable, next);
          if (inserted) ++next;
          t.variable = it->second;
        }
      }
    }
    return std::move(out_);
  }

 private:
  NnfPtr ToNnf(const Formula& f, bool positive, std::map<std::string, std::uint32_t>& scope) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kAtom: {
        auto n = std::make_shared<Nnf>();
        n->kind = Nnf::Kind::kLiteral;
        n->literal.positive = positive;
        n->literal.predicate = f.predicate();
        for (const Term& t : f.args()) {
          n->literal.args.push_back(t.is_variable() ? CnfTerm::Var(scope.at(t.variable()))
                                                    : CnfTerm::Const(t.constant()));
        }
        return n;
      }
      case K::kNot:
        return ToNnf(f.operand(), !positive, scope);
      case K::kAnd:
      case K::kOr: {
        const bool conj = (f.kind() == K::kAnd) == positive;
        return Junction(conj, ToNnf(f.left(), positive, scope), ToNnf(f.right(), positive, scope));
      }
      case K::kImplies: {
        // a -> b  ==  ~a | b
        const bool conj = !positive;
        return Junction(conj, ToNnf(f.left(), !positive, scope), ToNnf(f.right(), positive, scope));
      }
      case K::kIff: {
        // a <-> b  ==  (~a | b) & (a | ~b);  negated: (a & ~b) | (~a & b)
        if (positive) {
          return Junction(true,
                          Junction(false, ToNnf(f.left(), false, scope), ToNnf(f.right(), true, scope)),
                          Junction(false, ToNnf(f.left(), true, scope), ToNnf(f.right(), false, scope)));
        }
        return Junction(false,
                        Junction(true, ToNnf(f.left(), true, scope), ToNnf(f.right(), false, scope)),
                        Junction(true, ToNnf(f.left(), false, scope), ToNnf(f.right(), true, scope)));
      }
      case K::kForAll:
      case K::kExists: {
        const bool universal = (f.kind() == K::kForAll) == positive;
        auto n = std::make_shared<Nnf>();
        n->kind = universal ? Nnf::Kind::kForAll : Nnf::Kind::kExists;
        n->variable = next_variable_++;
        const auto shadowed = scope.find(f.variable());
        const bool had = shadowed != scope.end();
        const std::uint32_t saved = had ? shadowed->second : 0;
        scope[f.variable()] = n->variable;
        n->children.push_back(ToNnf(f.body(), positive, scope));
        if (had) {
          scope[f.variable()] = saved;
        } else {
          scope.erase(f.variable());
        }
        return n;
      }
    }
    throw Error(ErrorCode::kInvalidArgument, "unreachable formula kind");
  }

  static NnfPtr Junction(bool conjunction, NnfPtr a, NnfPtr b) {
    auto n = std::make_shared<Nnf>();
    n->kind = conjunction ? Nnf::Kind::kAnd : Nnf::Kind::kOr;
    n->children = {std::move(a), std::move(b)};
    return n;
  }

  NnfPtr Skolemize(const NnfPtr& n, bool under_universal,
                   std::map<std::uint32_t, CnfTerm>& substitution) {
    switch (n->kind) {
      case Nnf::Kind::kLiteral: {
        auto out = std::make_shared<Nnf>(*n);
        for (CnfTerm& t : out->literal.args) {
          if (!t.is_variable) continue;
          const auto it = substitution.find(t.variable);
          if (it != substitution.end()) t = it->second;
        }
        return out;
      }
      case Nnf::Kind::kForAll: {
        auto out = std::make_shared<Nnf>(*n);
        out->children[0] = Skolemize(n->children[0], true, substitution);
        return out;
      }
      case Nnf::Kind::kExists: {
        if (under_universal) {
          throw Error(ErrorCode::kUnsupportedSkolemFunction,
                      "existential inside a universal needs a Skolem function");
        }
        std::string name = "sk" + std::to_string(skolem_counter_++);
        while (registry_.Find(name, SymbolKind::kConstant)) {
          name = "sk" + std::to_string(skolem_counter_++);
        }
        const SymbolId sk = registry_.Declare(name, 0, SymbolKind::kConstant);
        out_.skolem_symbols.push_back(sk);
        substitution[n->variable] = CnfTerm::Const(sk);
        return Skolemize(n->children[0], false, substitution);
      }
      default: {
        auto out = std::make_shared<Nnf>(*n);
        for (auto& c : out->children) c = Skolemize(c, under_universal, substitution);
        return out;
      }
    }
  }

  std::vector<Clause> Distribute(const NnfPtr& n) {
    switch (n->kind) {
      case Nnf::Kind::kLiteral:
        return {Clause{n->literal}};
      case Nnf::Kind::kForAll:
        return Distribute(n->children[0]);
      case Nnf::Kind::kAnd: {
        auto a = Distribute(n->children[0]);
        auto b = Distribute(n->children[1]);
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        return a;
      }
      case Nnf::Kind::kOr: {
        const auto a = Distribute(n->children[0]);
        const auto b = Distribute(n->children[1]);
        if (a.size() * b.size() > kMaxClauses) {
          throw Error(ErrorCode::kDomainTooLarge, "clause form exceeds " +
                                                      std::to_string(kMaxClauses) + " clauses");
        }
        std::vector<Clause> out;
        out.reserve(a.size() * b.size());
        for (const Clause& x : a) {
          for (const Clause& y : b) {
            Clause c = x;
            c.insert(c.end(), y.begin(), y.end());
            out.push_back(std::move(c));
          }
        }
        return out;
      }
      case Nnf::Kind::kExists:
        break;
    }
    throw Error(ErrorCode::kInvalidArgument, "existential survived skolemization");
  }

  // Sorts and dedupes; returns false for tautologies.
  static bool Normalize(Clause& c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (c[i].predicate == c[j].predicate && c[i].args == c[j].args &&
            c[i].positive != c[j].positive) {
          return false;
        }
      }
    }
    return true;
  }

  SymbolRegistry& registry_;
  ClauseSet out_;
  std::uint32_t next_variable_ = 0;
  std::uint32_t skolem_counter_ = 0;
};

}  // namespace

ClauseSet ToCnf(const std::vector<Formula>& formulas, SymbolRegistry& registry) {
  SymbolRegistry scratch = registry;
  Converter converter(scratch);
  for (const Formula& f : formulas) converter.Add(f);
  ClauseSet out = converter.Finish();
  registry = std::move(scratch);
  return out;
}

ClauseSet ToCnf(const Formula& formula, SymbolRegistry& registry) {
  return ToCnf(std::vector<Formula>{formula}, registry);
}

std::string RenderClause(const Clause& clause, const SymbolRegistry& registry) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i) out << ", ";
    const Literal& l = clause[i];
    if (!l.positive) out << '~';
    out << registry.Name(l.predicate);
    if (!l.args.empty()) {
      out << '(';
      for (std::size_t j = 0; j < l.args.size(); ++j) {
        if (j) out << ", ";
        const CnfTerm& t = l.args[j];
        out << (t.is_variable ? "x" + std::to_string(t.variable) : registry.Name(t.constant));
      }
      out << ')';
    }
  }
  out << '}';
  return out.str();
}

}  // namespace symdrift::fol

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

// Model enumeration oracle. Deliberately shares nothing with the clause-form
// path: formulas are grounded over a finite domain and interpretations are
// searched directly, with three-valued evaluation cutting off subtrees of the
// interpretation space that cannot contain a model.

#include <algorithm>
#include <cstdint>
#include <map>

#include "symdrift/error.h"
#include "symdrift/solver.h"

namespace symdrift::solver {

using fol::Formula;
using fol::LogicProgram;
using fol::SymbolId;
using fol::SymbolKind;

namespace {

// Existential quantifiers once negations are pushed to the atoms. Both sides
// of a biconditional occur under both polarities.
std::size_t CountExistentials(const Formula& f, bool positive) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      return 0;
    case K::kNot:
      return CountExistentials(f.operand(), !positive);
    case K::kAnd:
    case K::kOr:
      return CountExistentials(f.left(), positive) + CountExistentials(f.right(), positive);
    case K::kImplies:
      return CountExistentials(f.left(), !positive) + CountExistentials(f.right(), positive);
    case K::kIff:
      return CountExistentials(f.left(), true) + CountExistentials(f.left(), false) +
             CountExistentials(f.right(), true) + CountExistentials(f.right(), false);
    case K::kForAll:
    case K::kExists: {
      const bool existential = (f.kind() == K::kExists) == positive;
      return (existential ? 1 : 0) + CountExistentials(f.body(), positive);
    }
  }
  return 0;
}

enum class Truth : std::uint8_t { kFalse, kTrue, kOpen };

// Ground propositional formula; quantifiers are expanded over the domain.
struct Node {
  enum class Kind : std::uint8_t { kAtom, kNot, kAnd, kOr, kIff } kind;
  std::size_t atom = 0;
  std::vector<std::uint32_t> children;
};

class Grounder {
 public:
  Grounder(const LogicProgram& program, std::size_t domain_size,
           const std::map<SymbolId, std::size_t>& element_of)
      : domain_(domain_size), element_of_(element_of) {
    std::size_t offset = 0;
    for (SymbolId p : program.registry.Symbols(SymbolKind::kPredicate)) {
      offsets_[p] = offset;
      std::size_t count = 1;
      for (std::size_t i = 0; i < program.registry.Info(p).arity; ++i) {
        count *= domain_;
        if (count > kMaxEnumerationBits) break;
      }
      offset += count;
      if (offset > kMaxEnumerationBits) {
        throw Error(ErrorCode::kDomainTooLarge,
                    "more than " + std::to_string(kMaxEnumerationBits) + " ground atoms over " +
                        std::to_string(domain_) + " domain elements");
      }
    }
    atoms_ = offset;
  }

  std::size_t atoms() const { return atoms_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::uint32_t Ground(const Formula& f) {
    std::vector<std::pair<std::string, std::size_t>> env;
    return Ground(f, env);
  }

  std::uint32_t Make(Node::Kind kind, std::vector<std::uint32_t> children) {
    nodes_.push_back(Node{kind, 0, std::move(children)});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

 private:
  std::uint32_t Ground(const Formula& f, std::vector<std::pair<std::string, std::size_t>>& env) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kAtom: {
        std::size_t index = 0;
        for (const fol::Term& t : f.args()) {
          std::size_t element = 0;
          if (t.is_variable()) {
            const auto it = std::find_if(env.rbegin(), env.rend(),
                                         [&](const auto& b) { return b.first == t.variable(); });
            if (it == env.rend()) {
              throw Error(ErrorCode::kTypeError, "free variable '" + t.variable() + "'");
            }
            element = it->second;
          } else {
            element = element_of_.at(t.constant());
          }
          index = index * domain_ + element;
        }
        nodes_.push_back(Node{Node::Kind::kAtom, offsets_.at(f.predicate()) + index, {}});
        return static_cast<std::uint32_t>(nodes_.size() - 1);
      }
      case K::kNot:
        return Make(Node::Kind::kNot, {Ground(f.operand(), env)});
      case K::kAnd:
        return Make(Node::Kind::kAnd, {Ground(f.left(), env), Ground(f.right(), env)});
      case K::kOr:
        return Make(Node::Kind::kOr, {Ground(f.left(), env), Ground(f.right(), env)});
      case K::kImplies: {
        const std::uint32_t l = Ground(f.left(), env);
        return Make(Node::Kind::kOr, {Make(Node::Kind::kNot, {l}), Ground(f.right(), env)});
      }
      case K::kIff:
        return Make(Node::Kind::kIff, {Ground(f.left(), env), Ground(f.right(), env)});
      case K::kForAll:
      case K::kExists: {
        std::vector<std::uint32_t> instances;
        for (std::size_t e = 0; e < domain_; ++e) {
          env.emplace_back(f.variable(), e);
          instances.push_back(Ground(f.body(), env));
          env.pop_back();
        }
        return Make(f.kind() == K::kForAll ? Node::Kind::kAnd : Node::Kind::kOr, std::move(instances));
      }
    }
    throw Error(ErrorCode::kInvalidArgument, "unreachable formula kind");
  }

  std::size_t domain_;
  const std::map<SymbolId, std::size_t>& element_of_;
  std::map<SymbolId, std::size_t> offsets_;
  std::size_t atoms_ = 0;
  std::vector<Node> nodes_;
};

class ModelSearch {
 public:
  ModelSearch(const std::vector<Node>& nodes, std::uint32_t root, std::size_t atoms)
      : nodes_(nodes), root_(root), value_(atoms, Truth::kOpen) {}

  // True when some interpretation satisfies the root. `visited` counts the
  // partial interpretations examined.
  bool Satisfiable(std::size_t& visited) { return Search(0, visited); }

 private:
  bool Search(std::size_t next, std::size_t& visited) {
    ++visited;
    const Truth t = Eval(root_);
    if (t != Truth::kOpen) return t == Truth::kTrue;
    while (next < value_.size() && value_[next] != Truth::kOpen) ++next;
    if (next == value_.size()) return false;  // unreachable: every atom assigned
    for (Truth choice : {Truth::kTrue, Truth::kFalse}) {
      value_[next] = choice;
      if (Search(next + 1, visited)) return true;
    }
    value_[next] = Truth::kOpen;
    return false;
  }

  Truth Eval(std::uint32_t id) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Node::Kind::kAtom:
        return value_[n.atom];
      case Node::Kind::kNot: {
        const Truth t = Eval(n.children[0]);
        return t == Truth::kOpen ? t : (t == Truth::kTrue ? Truth::kFalse : Truth::kTrue);
      }
      case Node::Kind::kAnd:
      case Node::Kind::kOr: {
        const Truth absorbing = n.kind == Node::Kind::kAnd ? Truth::kFalse : Truth::kTrue;
        bool open = false;
        for (std::uint32_t c : n.children) {
          const Truth t = Eval(c);
          if (t == absorbing) return absorbing;
          open |= t == Truth::kOpen;
        }
        if (open) return Truth::kOpen;
        return absorbing == Truth::kFalse ? Truth::kTrue : Truth::kFalse;
      }
      case Node::Kind::kIff: {
        const Truth a = Eval(n.children[0]);
        if (a == Truth::kOpen) return a;
        const Truth b = Eval(n.children[1]);
        if (b == Truth::kOpen) return b;
        return a == b ? Truth::kTrue : Truth::kFalse;
      }
    }
    return Truth::kOpen;
  }

  const std::vector<Node>& nodes_;
  std::uint32_t root_;
  std::vector<Truth> value_;
};

// Is premises & goal satisfiable over the named elements plus one witness per
// existential?
bool HasModel(const LogicProgram& program, const Formula& goal, std::size_t named,
              const std::map<SymbolId, std::size_t>& element_of, std::size_t& visited) {
  std::size_t witnesses = CountExistentials(goal, true);
  for (const Formula& p : program.premises) witnesses += CountExistentials(p, true);
  const std::size_t domain = std::max<std::size_t>(1, named + witnesses);

  Grounder grounder(program, domain, element_of);
  std::vector<std::uint32_t> parts;
  for (const Formula& p : program.premises) parts.push_back(grounder.Ground(p));
  parts.push_back(grounder.Ground(goal));
  const std::uint32_t root = grounder.Make(Node::Kind::kAnd, std::move(parts));
  ModelSearch search(grounder.nodes(), root, grounder.atoms());
  return search.Satisfiable(visited);
}

}  // namespace

Verdict EnumerateModels(const LogicProgram& program, std::span<const std::string> extra_constants) {
  if (!program.query) throw Error(ErrorCode::kInvalidArgument, "program has no query");
  fol::ValidateProgram(program);

  std::map<SymbolId, std::size_t> element_of;
  for (SymbolId c : program.registry.Symbols(SymbolKind::kConstant)) {
    element_of.emplace(c, element_of.size());
  }
  std::size_t named = element_of.size();
  for (const std::string& name : extra_constants) {
    if (!program.registry.Find(name, SymbolKind::kConstant)) ++named;
  }

  Verdict verdict;
  const Formula& query = *program.query;
  if (!HasModel(program, Formula::Not(query), named, element_of, verdict.steps)) {
    verdict.value = Outcome::kProved;
  } else if (!HasModel(program, query, named, element_of, verdict.steps)) {
    verdict.value = Outcome::kDisproved;
  } else {
    verdict.value = Outcome::kUnknown;
  }
  return verdict;
}

}  // namespace symdrift::solver

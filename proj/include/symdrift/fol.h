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

// First-order logic data model for the function-free fragment: predicates of
// any arity over constants and variables, the usual connectives, and both
// quantifiers. Formulas are immutable, cheaply copyable values.
//
// Text dialect (canonical):
//   all x (Kind(x) -> Smart(x))
//   exists x Kind(x)
//   ~Kind(Anne) & (Tall(Bob) | Rich(Bob))
// Precedence, tightest first: ~, &, |, -> (right-assoc), <->.  A quantifier
// scopes over a single unary formula, so its body is parenthesised whenever
// it is binary.  Unbound single-letter identifiers (optionally followed by
// digits) in argument position are free variables; every other unbound
// identifier is a constant.

#ifndef SYMDRIFT_FOL_H_
#define SYMDRIFT_FOL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace symdrift::fol {

struct SymbolId {
  std::uint32_t value = 0;
  auto operator<=>(const SymbolId&) const = default;
};

enum class SymbolKind { kPredicate, kConstant };

struct SymbolInfo {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::kPredicate;
};

// Owns the symbols of one program. Names are unique per kind; ids are never
// reused, so renaming is a registry-only change.
class SymbolRegistry {
 public:
  // Creates a new symbol. Throws kNameCollision if the name is taken.
  SymbolId Declare(std::string_view name, std::size_t arity, SymbolKind kind);

  // Returns the existing symbol or declares it. Throws ArityMismatch when the
  // name exists with a different arity.
  SymbolId Intern(std::string_view name, std::size_t arity, SymbolKind kind);

  std::optional<SymbolId> Find(std::string_view name, SymbolKind kind) const;
  bool Contains(SymbolId id) const { return entries_.count(id) != 0; }
  const SymbolInfo& Info(SymbolId id) const;
  const std::string& Name(SymbolId id) const { return Info(id).name; }

  void Rename(SymbolId id, std::string_view new_name);
  void Remove(SymbolId id);

  // Symbols of one kind in declaration order.
  std::vector<SymbolId> Symbols(SymbolKind kind) const;
  std::size_t size() const { return entries_.size(); }

  // Returns `base` if unused within `kind`, else base2, base3, ...
  std::string FreshName(std::string_view base, SymbolKind kind) const;

 private:
  std::map<SymbolId, SymbolInfo> entries_;
  std::map<std::pair<SymbolKind, std::string>, SymbolId, std::less<>> by_name_;
  std::uint32_t next_ = 0;
};

class Term {
 public:
  static Term Variable(std::string name) { return Term(std::move(name)); }
  static Term Constant(SymbolId id) { return Term(id); }

  bool is_variable() const { return std::holds_alternative<std::string>(value_); }
  const std::string& variable() const { return std::get<std::string>(value_); }
  SymbolId constant() const { return std::get<SymbolId>(value_); }

  bool operator==(const Term&) const = default;

 private:
  explicit Term(std::string name) : value_(std::move(name)) {}
  explicit Term(SymbolId id) : value_(id) {}

  std::variant<std::string, SymbolId> value_;
};

class Formula {
 public:
  enum class Kind { kAtom, kNot, kAnd, kOr, kImplies, kIff, kForAll, kExists };

  static Formula Atom(SymbolId predicate, std::vector<Term> args);
  static Formula Not(Formula operand);
  static Formula And(Formula left, Formula right);
  static Formula Or(Formula left, Formula right);
  static Formula Implies(Formula left, Formula right);
  static Formula Iff(Formula left, Formula right);
  static Formula Binary(Kind kind, Formula left, Formula right);
  static Formula ForAll(std::string variable, Formula body);
  static Formula Exists(std::string variable, Formula body);
  static Formula Quantified(Kind kind, std::string variable, Formula body);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_binary() const;
  bool is_quantifier() const { return kind() == Kind::kForAll || kind() == Kind::kExists; }

  // Atom accessors.
  SymbolId predicate() const;
  const std::vector<Term>& args() const;
  // kNot.
  const Formula& operand() const;
  // Binary connectives.
  const Formula& left() const;
  const Formula& right() const;
  // Quantifiers.
  const std::string& variable() const;
  const Formula& body() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

enum class Semantics { kOpenWorld, kClosedWorld, kCsp };

std::string_view SemanticsName(Semantics s);
Semantics ParseSemantics(std::string_view name);

// The translated form of one problem. Value type: the editing operations below
// return new programs.
struct LogicProgram {
  SymbolRegistry registry;
  std::vector<Formula> premises;
  std::optional<Formula> query;
  Semantics semantics = Semantics::kOpenWorld;
};

enum class Dialect { kCanonical, kProver9 };

// Parses one formula, registering unseen predicates and constants in
// `registry`. The registry is left untouched when parsing fails.
Formula ParseFormula(std::string_view text, SymbolRegistry& registry);

std::string RenderFormula(const Formula& f, const SymbolRegistry& registry,
                          Dialect dialect = Dialect::kCanonical);

std::set<std::string> FreeVariables(const Formula& f);

// Predicate and constant symbols occurring in `f`.
std::set<SymbolId> SymbolsOf(const Formula& f);

// Checks that every atom names a registered predicate with the right arity and
// every constant is registered.
void TypeCheck(const Formula& f, const SymbolRegistry& registry);

// Type-checks all formulas, requires them to be closed, and enforces the Horn
// restriction in closed-world mode.
void ValidateProgram(const LogicProgram& program);

// A closed-world premise: a ground atom, or a universally closed implication
// from a conjunction of atoms to a single atom.
bool IsHornPremise(const Formula& f);

// Rebuilds `f`, replacing every atom with the formula returned by `fn`. Atoms
// are visited left to right.
Formula MapAtoms(const Formula& f,
                 const std::function<Formula(SymbolId, const std::vector<Term>&)>& fn);

LogicProgram RenameSymbol(const LogicProgram& program, SymbolId old_symbol,
                          std::string_view new_name);

// Replaces every atom compound(t) by (base(t) & modifier(t)) and drops the
// compound from the registry. All three must be unary predicates.
LogicProgram RefineSymbol(const LogicProgram& program, SymbolId compound, SymbolId base,
                          SymbolId modifier);

// Same, naming base and modifier; absent ones are registered as unary.
LogicProgram RefineSymbol(const LogicProgram& program, SymbolId compound,
                          std::string_view base_name, std::string_view modifier_name);

// Redirects every atom of `from` to `into` (same arity) and drops `from`.
LogicProgram MergeSymbol(const LogicProgram& program, SymbolId from, SymbolId into);

// Program text:
//   Mode: closed-world          (optional; default open-world)
//   Premises:
//   Kind(Anne)
//   all x (Kind(x) -> Smart(x))
//   Query:
//   Smart(Anne)
// Blank lines and lines starting with '#' are ignored; a trailing '.' on a
// formula line is dropped.
std::string RenderProgram(const LogicProgram& program);
LogicProgram ParseProgram(std::string_view text);

}  // namespace symdrift::fol

#endif  // SYMDRIFT_FOL_H_

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

#include "symdrift/fol.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::fol {

// ---------------------------------------------------------------------------
// SymbolRegistry

SymbolId SymbolRegistry::Declare(std::string_view name, std::size_t arity, SymbolKind kind) {
  if (Find(name, kind)) {
    throw Error(ErrorCode::kNameCollision, std::string(name));
  }
  const SymbolId id{next_++};
  entries_.emplace(id, SymbolInfo{std::string(name), arity, kind});
  by_name_.emplace(std::make_pair(kind, std::string(name)), id);
  return id;
}

SymbolId SymbolRegistry::Intern(std::string_view name, std::size_t arity, SymbolKind kind) {
  if (const auto id = Find(name, kind)) {
    const SymbolInfo& info = entries_.at(*id);
    if (info.arity != arity) throw ArityMismatch(info.name, info.arity, arity);
    return *id;
  }
  return Declare(name, arity, kind);
}

std::optional<SymbolId> SymbolRegistry::Find(std::string_view name, SymbolKind kind) const {
  const auto it = by_name_.find(std::make_pair(kind, std::string(name)));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

const SymbolInfo& SymbolRegistry::Info(SymbolId id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kUnknownSymbol, "symbol #" + std::to_string(id.value));
  }
  return it->second;
}

void SymbolRegistry::Rename(SymbolId id, std::string_view new_name) {
  const SymbolInfo info = Info(id);
  if (info.name == new_name) return;
  if (Find(new_name, info.kind)) throw Error(ErrorCode::kNameCollision, std::string(new_name));
  by_name_.erase(std::make_pair(info.kind, info.name));
  by_name_.emplace(std::make_pair(info.kind, std::string(new_name)), id);
  entries_.at(id).name = std::string(new_name);
}

void SymbolRegistry::Remove(SymbolId id) {
  const SymbolInfo info = Info(id);
  by_name_.erase(std::make_pair(info.kind, info.name));
  entries_.erase(id);
}

std::vector<SymbolId> SymbolRegistry::Symbols(SymbolKind kind) const {
  std::vector<SymbolId> out;
  for (const auto& [id, info] : entries_) {
    if (info.kind == kind) out.push_back(id);
  }
  return out;
}

std::string SymbolRegistry::FreshName(std::string_view base, SymbolKind kind) const {
  std::string name(base);
  for (int suffix = 2; Find(name, kind); ++suffix) {
    name = std::string(base) + std::to_string(suffix);
  }
  return name;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  SymbolId predicate;
  std::vector<Term> args;
  std::vector<Formula> children;
  std::string variable;
};

Formula Formula::Atom(SymbolId predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAtom, predicate, std::move(args), {}, {}}));
}

Formula Formula::Not(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(operand)}, {}}));
}

Formula Formula::Binary(Kind kind, Formula left, Formula right) {
  if (kind != Kind::kAnd && kind != Kind::kOr && kind != Kind::kImplies && kind != Kind::kIff) {
    throw Error(ErrorCode::kInvalidArgument, "not a binary connective");
  }
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, {}, {std::move(left), std::move(right)}, {}}));
}

Formula Formula::And(Formula l, Formula r) { return Binary(Kind::kAnd, std::move(l), std::move(r)); }
Formula Formula::Or(Formula l, Formula r) { return Binary(Kind::kOr, std::move(l), std::move(r)); }
Formula Formula::Implies(Formula l, Formula r) {
  return Binary(Kind::kImplies, std::move(l), std::move(r));
}
Formula Formula::Iff(Formula l, Formula r) { return Binary(Kind::kIff, std::move(l), std::move(r)); }

Formula Formula::Quantified(Kind kind, std::string variable, Formula body) {
  if (kind != Kind::kForAll && kind != Kind::kExists) {
    throw Error(ErrorCode::kInvalidArgument, "not a quantifier");
  }
  return Formula(
      std::make_shared<const Node>(Node{kind, {}, {}, {std::move(body)}, std::move(variable)}));
}

Formula Formula::ForAll(std::string v, Formula body) {
  return Quantified(Kind::kForAll, std::move(v), std::move(body));
}
Formula Formula::Exists(std::string v, Formula body) {
  return Quantified(Kind::kExists, std::move(v), std::move(body));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  const Kind k = kind();
  return k == Kind::kAnd || k == Kind::kOr || k == Kind::kImplies || k == Kind::kIff;
}

SymbolId Formula::predicate() const { return node_->predicate; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const std::string& Formula::variable() const { return node_->variable; }
const Formula& Formula::body() const { return node_->children.at(0); }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.predicate == b.predicate && a.args == b.args &&
         a.variable == b.variable && a.children == b.children;
}

std::string_view SemanticsName(Semantics s) {
  switch (s) {
    case Semantics::kOpenWorld: return "open-world";
    case Semantics::kClosedWorld: return "closed-world";
    case Semantics::kCsp: return "csp";
  }
  return "open-world";
}

Semantics ParseSemantics(std::string_view name) {
  if (name == "open-world") return Semantics::kOpenWorld;
  if (name == "closed-world") return Semantics::kClosedWorld;
  if (name == "csp") return Semantics::kCsp;
  throw Error(ErrorCode::kInvalidArgument, "unknown semantics '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kNot, kAnd, kOr, kImplies, kIff, kEnd };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::string Describe(const Token& t) {
  return t.type == Tok::kEnd ? std::string("end of input") : "'" + t.text + "'";
}

std::vector<Token> Lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      // Numeric constants such as position literals.
      const std::size_t start = i;
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::kIff, "<->", i});
      i += 3;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::kImplies, "->", i});
      i += 2;
    } else {
      Tok type;
      switch (c) {
        case '(': type = Tok::kLParen; break;
        case ')': type = Tok::kRParen; break;
        case ',': type = Tok::kComma; break;
        case '~':
        case '-': type = Tok::kNot; break;
        case '&': type = Tok::kAnd; break;
        case '|': type = Tok::kOr; break;
        default: throw SyntaxError(i, "formula", std::string("'") + c + "'");
      }
      out.push_back({type, std::string(1, c), i});
      ++i;
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

bool LooksLikeFreeVariable(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, SymbolRegistry& registry)
      : tokens_(std::move(tokens)), registry_(registry) {}

  Formula ParseAll() {
    Formula f = ParseIff();
    if (Peek().type != Tok::kEnd) throw SyntaxError(Peek().pos, "end of input", Describe(Peek()));
    return f;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }

  void Expect(Tok type, const char* what) {
    if (Peek().type != type) throw SyntaxError(Peek().pos, what, Describe(Peek()));
    ++pos_;
  }

  Formula ParseIff() {
    Formula left = ParseImplies();
    while (Peek().type == Tok::kIff) {
      Next();
      left = Formula::Iff(std::move(left), ParseImplies());
    }
    return left;
  }

  Formula ParseImplies() {
    Formula left = ParseOr();
    if (Peek().type == Tok::kImplies) {
      Next();
      return Formula::Implies(std::move(left), ParseImplies());
    }
    return left;
  }

  Formula ParseOr() {
    Formula left = ParseAnd();
    while (Peek().type == Tok::kOr) {
      Next();
      left = Formula::Or(std::move(left), ParseAnd());
    }
    return left;
  }

  Formula ParseAnd() {
    Formula left = ParseUnary();
    while (Peek().type == Tok::kAnd) {
      Next();
      left = Formula::And(std::move(left), ParseUnary());
    }
    return left;
  }

  Formula ParseUnary() {
    const Token& t = Peek();
    switch (t.type) {
      case Tok::kNot:
        Next();
        return Formula::Not(ParseUnary());
      case Tok::kLParen: {
        Next();
        Formula inner = ParseIff();
        Expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kIdent:
        if ((t.text == "all" || t.text == "exists") && tokens_[pos_ + 1].type == Tok::kIdent) {
          const Formula::Kind kind = t.text == "all" ? Formula::Kind::kForAll : Formula::Kind::kExists;
          Next();
          std::string var = Next().text;
          bound_.push_back(var);
          Formula body = ParseUnary();
          bound_.pop_back();
          return Formula::Quantified(kind, std::move(var), std::move(body));
        }
        return ParseAtom();
      default:
        throw SyntaxError(t.pos, "formula", Describe(t));
    }
  }

  Formula ParseAtom() {
    const Token name = Next();
    std::vector<Term> args;
    if (Peek().type == Tok::kLParen) {
      Next();
      if (Peek().type == Tok::kRParen) throw SyntaxError(Peek().pos, "argument", "')'");
      while (true) {
        args.push_back(ParseTerm());
        if (Peek().type == Tok::kComma) {
          Next();
          continue;
        }
        Expect(Tok::kRParen, "',' or ')'");
        break;
      }
    }
    const SymbolId pred = registry_.Intern(name.text, args.size(), SymbolKind::kPredicate);
    return Formula::Atom(pred, std::move(args));
  }

  Term ParseTerm() {
    const Token& t = Peek();
    if (t.type != Tok::kIdent) throw SyntaxError(t.pos, "term", Describe(t));
    Next();
    if (std::find(bound_.begin(), bound_.end(), t.text) != bound_.end() ||
        LooksLikeFreeVariable(t.text)) {
      return Term::Variable(t.text);
    }
    return Term::Constant(registry_.Intern(t.text, 0, SymbolKind::kConstant));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SymbolRegistry& registry_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula ParseFormula(std::string_view text, SymbolRegistry& registry) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw SyntaxError(0, "formula", "empty input");
  }
  SymbolRegistry scratch = registry;
  Parser parser(Lex(text), scratch);
  Formula f = parser.ParseAll();
  registry = std::move(scratch);
  return f;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int Precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kIff: return 1;
    case Formula::Kind::kImplies: return 2;
    case Formula::Kind::kOr: return 3;
    case Formula::Kind::kAnd: return 4;
    default: return 5;
  }
}

const char* ConnectiveText(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kAnd: return " & ";
    case Formula::Kind::kOr: return " | ";
    case Formula::Kind::kImplies: return " -> ";
    default: return " <-> ";
  }
}

class Renderer {
 public:
  Renderer(const SymbolRegistry& registry, Dialect dialect) : registry_(registry), dialect_(dialect) {}

  void Render(const Formula& f, int required, std::ostringstream& out) const {
    const bool prover9 = dialect_ == Dialect::kProver9;
    // Prover9 binds quantifiers loosely; keep them isolated from connectives.
    const bool wrap = Precedence(f) < required || (prover9 && f.is_quantifier() && required > 1);
    if (wrap) out << '(';
    switch (f.kind()) {
      case Formula::Kind::kAtom:
        RenderAtom(f, out);
        break;
      case Formula::Kind::kNot:
        out << (prover9 ? '-' : '~');
        Render(f.operand(), 5, out);
        break;
      case Formula::Kind::kForAll:
      case Formula::Kind::kExists:
        out << (f.kind() == Formula::Kind::kForAll ? "all " : "exists ") << f.variable() << ' ';
        Render(f.body(), 5, out);
        break;
      default: {
        const int p = Precedence(f);
        const bool right_assoc = f.kind() == Formula::Kind::kImplies;
        Render(f.left(), right_assoc ? p + 1 : p, out);
        out << ConnectiveText(f.kind());
        Render(f.right(), right_assoc ? p : p + 1, out);
      }
    }
    if (wrap) out << ')';
  }

 private:
  std::string ConstantName(SymbolId id) const {
    const std::string& name = registry_.Name(id);
    // Prover9 reads lowercase u..z identifiers as variables.
    if (dialect_ == Dialect::kProver9 && !name.empty() && name[0] >= 'u' && name[0] <= 'z') {
      return "c_" + name;
    }
    return name;
  }

  void RenderAtom(const Formula& f, std::ostringstream& out) const {
    out << registry_.Name(f.predicate());
    if (f.args().empty()) return;
    out << '(';
    for (std::size_t i = 0; i < f.args().size(); ++i) {
      if (i) out << ", ";
      const Term& t = f.args()[i];
      out << (t.is_variable() ? t.variable() : ConstantName(t.constant()));
    }
    out << ')';
  }

  const SymbolRegistry& registry_;
  Dialect dialect_;
};

}  // namespace

std::string RenderFormula(const Formula& f, const SymbolRegistry& registry, Dialect dialect) {
  std::ostringstream out;
  Renderer(registry, dialect).Render(f, 0, out);
  if (dialect == Dialect::kProver9) out << '.';
  return out.str();
}

// ---------------------------------------------------------------------------
// Queries over formulas

namespace {

void CollectFree(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      for (const Term& t : f.args()) {
        if (t.is_variable() &&
            std::find(bound.begin(), bound.end(), t.variable()) == bound.end()) {
          out.insert(t.variable());
        }
      }
      return;
    case Formula::Kind::kNot:
      CollectFree(f.operand(), bound, out);
      return;
    case Formula::Kind::kForAll:
    case Formula::Kind::kExists:
      bound.push_back(f.variable());
      CollectFree(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      CollectFree(f.left(), bound, out);
      CollectFree(f.right(), bound, out);
  }
}

void CollectSymbols(const Formula& f, std::set<SymbolId>& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      out.insert(f.predicate());
      for (const Term& t : f.args()) {
        if (!t.is_variable()) out.insert(t.constant());
      }
      return;
    case Formula::Kind::kNot:
      CollectSymbols(f.operand(), out);
      return;
    case Formula::Kind::kForAll:
    case Formula::Kind::kExists:
      CollectSymbols(f.body(), out);
      return;
    default:
      CollectSymbols(f.left(), out);
      CollectSymbols(f.right(), out);
  }
}

}  // namespace

std::set<std::string> FreeVariables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  CollectFree(f, bound, out);
  return out;
}

std::set<SymbolId> SymbolsOf(const Formula& f) {
  std::set<SymbolId> out;
  CollectSymbols(f, out);
  return out;
}

void TypeCheck(const Formula& f, const SymbolRegistry& registry) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: {
      if (!registry.Contains(f.predicate())) {
        throw Error(ErrorCode::kUnknownSymbol, "predicate #" + std::to_string(f.predicate().value));
      }
      const SymbolInfo& info = registry.Info(f.predicate());
      if (info.kind != SymbolKind::kPredicate) {
        throw Error(ErrorCode::kTypeError, info.name + " is not a predicate");
      }
      if (info.arity != f.args().size()) throw ArityMismatch(info.name, info.arity, f.args().size());
      for (const Term& t : f.args()) {
        if (t.is_variable()) continue;
        if (!registry.Contains(t.constant())) {
          throw Error(ErrorCode::kUnknownSymbol, "constant #" + std::to_string(t.constant().value));
        }
        if (registry.Info(t.constant()).kind != SymbolKind::kConstant) {
          throw Error(ErrorCode::kTypeError, registry.Name(t.constant()) + " is not a constant");
        }
      }
      return;
    }
    case Formula::Kind::kNot:
      TypeCheck(f.operand(), registry);
      return;
    case Formula::Kind::kForAll:
    case Formula::Kind::kExists:
      TypeCheck(f.body(), registry);
      return;
    default:
      TypeCheck(f.left(), registry);
      TypeCheck(f.right(), registry);
  }
}

namespace {

bool IsConjunctionOfAtoms(const Formula& f) {
  if (f.is_atom()) return true;
  return f.kind() == Formula::Kind::kAnd && IsConjunctionOfAtoms(f.left()) &&
         IsConjunctionOfAtoms(f.right());
}

bool IsGroundLiteralConjunction(const Formula& f) {
  if (f.kind() == Formula::Kind::kAnd) {
    return IsGroundLiteralConjunction(f.left()) && IsGroundLiteralConjunction(f.right());
  }
  const Formula& atom = f.kind() == Formula::Kind::kNot ? f.operand() : f;
  return atom.is_atom() && FreeVariables(atom).empty();
}

}  // namespace

bool IsHornPremise(const Formula& f) {
  const Formula* core = &f;
  while (core->kind() == Formula::Kind::kForAll) core = &core->body();
  if (core->is_atom()) return true;
  return core->kind() == Formula::Kind::kImplies && IsConjunctionOfAtoms(core->left()) &&
         core->right().is_atom();
}

void ValidateProgram(const LogicProgram& program) {
  auto check = [&](const Formula& f, const char* role) {
    TypeCheck(f, program.registry);
    const auto free = FreeVariables(f);
    if (!free.empty()) {
      throw Error(ErrorCode::kTypeError, std::string(role) + " has free variable '" +
                                             *free.begin() + "': " +
                                             RenderFormula(f, program.registry));
    }
  };
  for (const Formula& p : program.premises) {
    check(p, "premise");
    if (program.semantics == Semantics::kClosedWorld && !IsHornPremise(p)) {
      throw Error(ErrorCode::kNotHorn, RenderFormula(p, program.registry));
    }
  }
  if (program.query) {
    check(*program.query, "query");
    if (program.semantics == Semantics::kClosedWorld && !IsGroundLiteralConjunction(*program.query)) {
      throw Error(ErrorCode::kNotHorn,
                  "closed-world query must be ground literals: " +
                      RenderFormula(*program.query, program.registry));
    }
  }
}

// ---------------------------------------------------------------------------
// Program editing

Formula MapAtoms(const Formula& f,
                 const std::function<Formula(SymbolId, const std::vector<Term>&)>& fn) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      return fn(f.predicate(), f.args());
    case Formula::Kind::kNot:
      return Formula::Not(MapAtoms(f.operand(), fn));
    case Formula::Kind::kForAll:
    case Formula::Kind::kExists:
      return Formula::Quantified(f.kind(), f.variable(), MapAtoms(f.body(), fn));
    default: {
      // Sequenced so `fn` sees atoms left to right.
      Formula left = MapAtoms(f.left(), fn);
      return Formula::Binary(f.kind(), std::move(left), MapAtoms(f.right(), fn));
    }
  }
}

namespace {

LogicProgram RewriteAtoms(const LogicProgram& program,
                          const std::function<Formula(SymbolId, const std::vector<Term>&)>& fn) {
  LogicProgram out;
  out.registry = program.registry;
  out.semantics = program.semantics;
  out.premises.reserve(program.premises.size());
  for (const Formula& p : program.premises) out.premises.push_back(MapAtoms(p, fn));
  if (program.query) out.query = MapAtoms(*program.query, fn);
  return out;
}

void RequireUnaryPredicate(const SymbolRegistry& registry, SymbolId id) {
  const SymbolInfo& info = registry.Info(id);
  if (info.kind != SymbolKind::kPredicate || info.arity != 1) {
    throw Error(ErrorCode::kNonUnaryCompound, info.name + " is not a unary predicate");
  }
}

}  // namespace

LogicProgram RenameSymbol(const LogicProgram& program, SymbolId old_symbol,
                          std::string_view new_name) {
  LogicProgram out = program;
  out.registry.Rename(old_symbol, new_name);
  return out;
}

LogicProgram RefineSymbol(const LogicProgram& program, SymbolId compound, SymbolId base,
                          SymbolId modifier) {
  RequireUnaryPredicate(program.registry, compound);
  RequireUnaryPredicate(program.registry, base);
  RequireUnaryPredicate(program.registry, modifier);
  if (compound == base || compound == modifier) {
    throw Error(ErrorCode::kInvalidArgument, "compound cannot refine into itself");
  }
  LogicProgram out = RewriteAtoms(program, [&](SymbolId pred, const std::vector<Term>& args) {
    if (pred != compound) return Formula::Atom(pred, args);
    return Formula::And(Formula::Atom(base, args), Formula::Atom(modifier, args));
  });
  out.registry.Remove(compound);
  return out;
}

LogicProgram RefineSymbol(const LogicProgram& program, SymbolId compound,
                          std::string_view base_name, std::string_view modifier_name) {
  RequireUnaryPredicate(program.registry, compound);
  LogicProgram staged = program;
  const SymbolId base = staged.registry.Intern(base_name, 1, SymbolKind::kPredicate);
  const SymbolId modifier = staged.registry.Intern(modifier_name, 1, SymbolKind::kPredicate);
  return RefineSymbol(staged, compound, base, modifier);
}

LogicProgram MergeSymbol(const LogicProgram& program, SymbolId from, SymbolId into) {
  const SymbolInfo& a = program.registry.Info(from);
  const SymbolInfo& b = program.registry.Info(into);
  if (a.kind != b.kind) throw Error(ErrorCode::kTypeError, "cannot merge symbols of different kinds");
  if (a.arity != b.arity) throw ArityMismatch(b.name, b.arity, a.arity);
  if (from == into) return program;
  LogicProgram out;
  if (a.kind == SymbolKind::kPredicate) {
    out = RewriteAtoms(program, [&](SymbolId pred, const std::vector<Term>& args) {
      return Formula::Atom(pred == from ? into : pred, args);
    });
  } else {
    out = RewriteAtoms(program, [&](SymbolId pred, const std::vector<Term>& args) {
      std::vector<Term> mapped = args;
      for (Term& t : mapped) {
        if (!t.is_variable() && t.constant() == from) t = Term::Constant(into);
      }
      return Formula::Atom(pred, std::move(mapped));
    });
  }
  out.registry.Remove(from);
  return out;
}

// ---------------------------------------------------------------------------
// Program text

std::string RenderProgram(const LogicProgram& program) {
  std::ostringstream out;
  out << "Mode: " << SemanticsName(program.semantics) << "\n";
  out << "Premises:\n";
  for (const Formula& p : program.premises) out << RenderFormula(p, program.registry) << "\n";
  out << "Query:\n";
  if (program.query) out << RenderFormula(*program.query, program.registry) << "\n";
  return out.str();
}

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool StartsWithNoCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

}  // namespace

LogicProgram ParseProgram(std::string_view text) {
  LogicProgram program;
  enum class Section { kNone, kPremises, kQuery } section = Section::kNone;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (StartsWithNoCase(line, "mode:")) {
      program.semantics = ParseSemantics(Trim(line.substr(5)));
      continue;
    }
    if (StartsWithNoCase(line, "premises:")) {
      section = Section::kPremises;
      continue;
    }
    if (StartsWithNoCase(line, "query:") || StartsWithNoCase(line, "conclusion:")) {
      section = Section::kQuery;
      line = Trim(line.substr(line.find(':') + 1));
      if (line.empty()) continue;
    }
    if (section == Section::kNone) {
      throw SyntaxError(0, "'Premises:' header", "'" + line + "' on line " + std::to_string(line_no));
    }
    if (line.back() == '.') line.pop_back();
    Formula f = ParseFormula(line, program.registry);
    if (section == Section::kPremises) {
      program.premises.push_back(std::move(f));
    } else {
      if (program.query) {
        throw SyntaxError(0, "a single query", "second query on line " + std::to_string(line_no));
      }
      program.query = std::move(f);
    }
  }
  return program;
}

}  // namespace symdrift::fol

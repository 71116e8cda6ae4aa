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

#include "symdrift/csp.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::solver {

namespace {

constexpr std::pair<RelationKind, std::string_view> kRelationNames[] = {
    {RelationKind::kLeftOf, "LeftOf"},
    {RelationKind::kRightOf, "RightOf"},
    {RelationKind::kAtPosition, "AtPosition"},
    {RelationKind::kAdjacent, "Adjacent"},
    {RelationKind::kNotAtPosition, "NotAtPosition"},
};

bool IsPositional(RelationKind kind) {
  return kind == RelationKind::kAtPosition || kind == RelationKind::kNotAtPosition;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Resolved form of a constraint: object indices instead of names.
struct Bound {
  RelationKind kind;
  std::size_t a;
  std::size_t b;
  std::size_t position;
};

std::size_t IndexOf(const CspSpec& spec, const std::string& name) {
  const auto it = std::find(spec.objects.begin(), spec.objects.end(), name);
  if (it == spec.objects.end()) {
    throw Error(ErrorCode::kUndefinedObject, "'" + name + "' is not a declared object");
  }
  return static_cast<std::size_t>(it - spec.objects.begin());
}

Bound Bind(const CspConstraint& c, const CspSpec& spec) {
  Bound out{c.kind, IndexOf(spec, c.first), 0, c.position};
  if (IsPositional(c.kind)) {
    if (c.position < 1 || c.position > spec.objects.size()) {
      throw Error(ErrorCode::kUndefinedObject,
                  "position " + std::to_string(c.position) + " outside 1.." +
                      std::to_string(spec.objects.size()));
    }
  } else {
    out.b = IndexOf(spec, c.second);
  }
  return out;
}

// Positions are 1-based; 0 marks an unassigned object.
bool Check(const Bound& c, const Placement& p) {
  const std::size_t pa = p[c.a];
  if (IsPositional(c.kind)) {
    if (pa == 0) return true;
    return (pa == c.position) == (c.kind == RelationKind::kAtPosition);
  }
  const std::size_t pb = p[c.b];
  if (pa == 0 || pb == 0) return true;
  switch (c.kind) {
    case RelationKind::kLeftOf:
      return pa < pb;
    case RelationKind::kRightOf:
      return pa > pb;
    case RelationKind::kAdjacent:
      return pa + 1 == pb || pb + 1 == pa;
    default:
      return true;
  }
}

class Search {
 public:
  Search(const CspSpec& spec, std::vector<Bound> constraints)
      : n_(spec.objects.size()), constraints_(std::move(constraints)) {}

  std::vector<Placement> Run() {
    Placement p(n_, 0);
    std::vector<std::vector<bool>> domains(n_, std::vector<bool>(n_ + 1, true));
    Assign(0, p, domains);
    return std::move(solutions_);
  }

  std::size_t nodes() const { return nodes_; }

 private:
  void Assign(std::size_t object, Placement& p, std::vector<std::vector<bool>>& domains) {
    if (object == n_) {
      solutions_.push_back(p);
      return;
    }
    for (std::size_t pos = 1; pos <= n_; ++pos) {
      if (!domains[object][pos]) continue;
      ++nodes_;
      p[object] = pos;
      auto pruned = domains;
      if (ForwardCheck(object, p, pruned)) Assign(object + 1, p, pruned);
      p[object] = 0;
    }
  }

  // Removes values of later objects that conflict with the assignment so far;
  // false when some later object has nothing left.
  bool ForwardCheck(std::size_t object, Placement& p, std::vector<std::vector<bool>>& domains) {
    for (const Bound& c : constraints_) {
      const bool touches = c.a == object || (!IsPositional(c.kind) && c.b == object);
      if (touches && !Check(c, p)) return false;
    }
    for (std::size_t other = object + 1; other < n_; ++other) {
      bool any = false;
      for (std::size_t pos = 1; pos <= n_; ++pos) {
        if (!domains[other][pos]) continue;
        if (pos == p[object]) {
          domains[other][pos] = false;
          continue;
        }
        p[other] = pos;
        for (const Bound& c : constraints_) {
          const bool links = (c.a == other && (IsPositional(c.kind) || p[c.b] != 0)) ||
                             (!IsPositional(c.kind) && c.b == other && p[c.a] != 0);
          if (links && !Check(c, p)) {
            domains[other][pos] = false;
            break;
          }
        }
        p[other] = 0;
        any |= domains[other][pos];
      }
      if (!any) return false;
    }
    return true;
  }

  std::size_t n_;
  std::vector<Bound> constraints_;
  std::vector<Placement> solutions_;
  std::size_t nodes_ = 0;
};

std::vector<Bound> BindAll(const std::vector<CspConstraint>& cs, const CspSpec& spec) {
  std::vector<Bound> out;
  for (const CspConstraint& c : cs) out.push_back(Bind(c, spec));
  return out;
}

}  // namespace

std::string_view RelationName(RelationKind kind) {
  for (const auto& [k, name] : kRelationNames) {
    if (k == kind) return name;
  }
  return "?";
}

bool Holds(const CspConstraint& c, const CspSpec& spec, const Placement& positions) {
  return Check(Bind(c, spec), positions);
}

std::vector<Placement> SolveAll(const CspSpec& spec, std::size_t* nodes) {
  if (spec.objects.size() > kMaxCspObjects) {
    throw Error(ErrorCode::kDomainTooLarge,
                std::to_string(spec.objects.size()) + " objects; at most " +
                    std::to_string(kMaxCspObjects) + " supported");
  }
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.objects.size(); ++j) {
      if (spec.objects[i] == spec.objects[j]) {
        throw Error(ErrorCode::kNameCollision, "object '" + spec.objects[i] + "' declared twice");
      }
    }
  }
  Search search(spec, BindAll(spec.constraints, spec));
  auto solutions = search.Run();
  if (nodes) *nodes = search.nodes();
  return solutions;
}

Verdict SolveCsp(const CspSpec& spec, const std::vector<CspOption>& options) {
  std::vector<std::vector<Bound>> bound_options;
  for (const CspOption& o : options) bound_options.push_back(BindAll(o, spec));
  std::size_t nodes = 0;
  const std::vector<Placement> solutions = SolveAll(spec, &nodes);
  if (solutions.empty()) throw Error(ErrorCode::kUnsatisfiable, "no placement satisfies the constraints");

  std::vector<std::size_t> entailed;
  for (std::size_t i = 0; i < bound_options.size(); ++i) {
    const bool everywhere = std::all_of(solutions.begin(), solutions.end(), [&](const Placement& p) {
      return std::all_of(bound_options[i].begin(), bound_options[i].end(),
                         [&](const Bound& c) { return Check(c, p); });
    });
    if (everywhere) entailed.push_back(i);
  }
  if (entailed.empty()) {
    throw Error(ErrorCode::kNoOptionEntailed,
                std::to_string(solutions.size()) + " solutions, no option holds in all of them");
  }
  if (entailed.size() > 1) {
    throw Error(ErrorCode::kAmbiguousOptions,
                std::to_string(entailed.size()) + " options hold in every solution");
  }
  Verdict verdict;
  verdict.value = Outcome::kOption;
  verdict.option = entailed.front();
  verdict.steps = nodes;
  return verdict;
}

std::string RenderConstraint(const CspConstraint& c) {
  std::string out(RelationName(c.kind));
  out += "(" + c.first + ", ";
  out += IsPositional(c.kind) ? std::to_string(c.position) : c.second;
  return out + ")";
}

CspConstraint ParseConstraint(std::string_view text) {
  const std::string s = Trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw SyntaxError(0, "Relation(arg, arg)", "'" + s + "'");
  }
  const std::string name = Trim(std::string_view(s).substr(0, open));
  CspConstraint c;
  bool known = false;
  for (const auto& [k, n] : kRelationNames) {
    if (n == name) {
      c.kind = k;
      known = true;
    }
  }
  if (!known) throw SyntaxError(0, "a relation name", "'" + name + "'");
  const auto args = Split(std::string_view(s).substr(open + 1, s.size() - open - 2), ',');
  if (args.size() != 2 || args[0].empty() || args[1].empty()) {
    throw SyntaxError(open + 1, "two arguments", "'" + s + "'");
  }
  c.first = args[0];
  if (IsPositional(c.kind)) {
    const std::string& p = args[1];
    if (!std::all_of(p.begin(), p.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      throw SyntaxError(open + 1, "a position number", "'" + p + "'");
    }
    c.position = std::stoul(p);
  } else {
    c.second = args[1];
  }
  return c;
}

std::string RenderCspProblem(const CspProblem& problem) {
  std::ostringstream out;
  out << "Objects: ";
  for (std::size_t i = 0; i < problem.spec.objects.size(); ++i) {
    out << (i ? ", " : "") << problem.spec.objects[i];
  }
  out << "\nConstraints:\n";
  for (const CspConstraint& c : problem.spec.constraints) out << RenderConstraint(c) << "\n";
  out << "Options:\n";
  for (const CspOption& o : problem.options) {
    for (std::size_t i = 0; i < o.size(); ++i) out << (i ? " & " : "") << RenderConstraint(o[i]);
    out << "\n";
  }
  return out.str();
}

CspProblem ParseCspProblem(std::string_view text) {
  CspProblem problem;
  enum class Section { kNone, kConstraints, kOptions } section = Section::kNone;
  bool have_objects = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("Objects:", 0) == 0) {
      for (std::string& o : Split(std::string_view(line).substr(8), ',')) {
        if (o.empty()) throw SyntaxError(8, "an object name", "empty entry");
        problem.spec.objects.push_back(std::move(o));
      }
      have_objects = true;
      continue;
    }
    if (line == "Constraints:") {
      section = Section::kConstraints;
      continue;
    }
    if (line == "Options:") {
      section = Section::kOptions;
      continue;
    }
    if (!line.empty() && line.back() == '.') line.pop_back();
    switch (section) {
      case Section::kNone:
        throw SyntaxError(0, "'Objects:' or 'Constraints:' header", "'" + line + "'");
      case Section::kConstraints:
        problem.spec.constraints.push_back(ParseConstraint(line));
        break;
      case Section::kOptions: {
        CspOption option;
        for (const std::string& part : Split(line, '&')) option.push_back(ParseConstraint(part));
        problem.options.push_back(std::move(option));
        break;
      }
    }
  }
  if (!have_objects) throw SyntaxError(0, "'Objects:' line", "end of input");
  return problem;
}

}  // namespace symdrift::solver

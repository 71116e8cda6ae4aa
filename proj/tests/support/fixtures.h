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

// Small hand-written problems shared by several test files.

#ifndef SYMDRIFT_TESTS_SUPPORT_FIXTURES_H_
#define SYMDRIFT_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

#include "symdrift/lexicon.h"
#include "symdrift/problem.h"

namespace symdrift::testing {

inline const lex::Resources& Res() { return lex::DefaultResources(); }

inline Problem MakeProblem(const std::string& id, const std::vector<std::string>& sentences,
                           const std::string& question, const std::string& answer = "True",
                           TaskKind kind = TaskKind::kOpenWorld) {
  Problem p;
  p.id = id;
  p.task_kind = kind;
  for (const std::string& s : sentences) p.sentences.push_back(MakeSentence(s, &Res().synonyms));
  p.question = MakeSentence(question, &Res().synonyms);
  p.answer = answer;
  return p;
}

// Registers every occurrence of `word` in the problem as a gold span of `concept_id`.
inline void MarkConcept(Problem& p, const std::string& word, const std::string& concept_id) {
  for (std::size_t u = 0; u < p.unit_count(); ++u) {
    const std::string& t = p.unit(u).text;
    for (std::size_t at = t.find(word); at != std::string::npos; at = t.find(word, at + 1)) {
      const bool left = at == 0 || !std::isalpha(static_cast<unsigned char>(t[at - 1]));
      const std::size_t end = at + word.size();
      const bool right = end == t.size() || !std::isalpha(static_cast<unsigned char>(t[end]));
      if (left && right) p.gold_concepts.emplace(Span{u, at, end}, concept_id);
    }
  }
}

// "Anne is kind. All kind people are smart. Is Anne smart?" with gold logic.
inline Problem KindFixture() {
  Problem p = MakeProblem("kind", {"Anne is kind.", "All kind people are smart."}, "Anne is smart.");
  p.gold_logic = "Premises:\nKind(Anne)\nall x (Kind(x) -> Smart(x))\nQuery:\nSmart(Anne)\n";
  MarkConcept(p, "kind", "Kind");
  MarkConcept(p, "smart", "Smart");
  return p;
}

}  // namespace symdrift::testing

#endif  // SYMDRIFT_TESTS_SUPPORT_FIXTURES_H_

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

// Sentence similarity scorers used to filter diversification candidates.

#ifndef SYMDRIFT_SIMILARITY_H_
#define SYMDRIFT_SIMILARITY_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "symdrift/lexicon.h"
#include "symdrift/net.h"

namespace symdrift::sim {

// Symmetric similarity in [0, 1].
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double Score(std::string_view a, std::string_view b) const = 0;
  virtual std::string_view name() const = 0;
};

// Multiset Jaccard over content lemmas (everything except punctuation and
// determiners), where lemmas in one synonym group count as equal.
class FallbackScorer : public Scorer {
 public:
  explicit FallbackScorer(const lex::SynonymLexicon& lexicon) : lexicon_(lexicon) {}
  double Score(std::string_view a, std::string_view b) const override;
  std::string_view name() const override { return "fallback"; }

  // The synonym-normalised content lemmas of a sentence.
  std::vector<std::string> Bag(std::string_view sentence) const;

 private:
  const lex::SynonymLexicon& lexicon_;
};

// Cosine of averaged word vectors, clamped to [0, 1]. File format: one
// "token v1 ... vd" line per token; an optional "count dim" header is skipped.
class VectorScorer : public Scorer {
 public:
  static VectorScorer Load(const std::filesystem::path& path);
  double Score(std::string_view a, std::string_view b) const override;
  std::string_view name() const override { return "vectors"; }

  std::size_t dimension() const { return dim_; }

 private:
  std::vector<double> Embed(std::string_view sentence) const;

  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::size_t dim_ = 0;
};

// Cosine over vectors from an embedding service; results are cached per text.
class RemoteScorer : public Scorer {
 public:
  explicit RemoteScorer(std::shared_ptr<net::EmbeddingClient> client) : client_(std::move(client)) {}
  double Score(std::string_view a, std::string_view b) const override;
  std::string_view name() const override { return "remote"; }

 private:
  std::shared_ptr<net::EmbeddingClient> client_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<double>, std::less<>> cache_;
};

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

struct ScorerConfig {
  std::string kind = "fallback";  // fallback | vectors | remote
  std::filesystem::path vectors_path;
};

// Throws kScorerUnavailable for unknown kinds, missing vector files or an
// unset embedding endpoint.
std::unique_ptr<Scorer> MakeScorer(const ScorerConfig& config, const lex::SynonymLexicon& lexicon);

}  // namespace symdrift::sim

#endif  // SYMDRIFT_SIMILARITY_H_

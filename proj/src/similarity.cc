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

#include "symdrift/similarity.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::sim {

std::vector<std::string> FallbackScorer::Bag(std::string_view sentence) const {
  std::vector<std::string> bag;
  for (const text::Token& t : text::Tokenize(sentence, &lexicon_)) {
    if (!text::IsContentToken(t)) continue;
    bag.push_back(lexicon_.GroupOf(text::ToLower(t.lemma)));
  }
  std::sort(bag.begin(), bag.end());
  return bag;
}

double FallbackScorer::Score(std::string_view a, std::string_view b) const {
  const std::vector<std::string> x = Bag(a), y = Bag(b);
  if (x.empty() && y.empty()) return 1.0;
  std::vector<std::string> common, all;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(all));
  return static_cast<double>(common.size()) / static_cast<double>(all.size());
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kScorerUnavailable, "vector sizes differ");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

VectorScorer VectorScorer::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kScorerUnavailable, "cannot read vectors file " + path.string());
  VectorScorer scorer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    if (line_no == 1 && v.size() == 1) continue;  // word2vec-style header
    if (v.empty()) throw FormatError(line_no, "token without vector");
    if (scorer.dim_ == 0) scorer.dim_ = v.size();
    if (v.size() != scorer.dim_) throw FormatError(line_no, "inconsistent vector dimension");
    scorer.vectors_.emplace(text::ToLower(token), std::move(v));
  }
  if (scorer.vectors_.empty()) throw Error(ErrorCode::kScorerUnavailable, "empty vectors file");
  return scorer;
}

std::vector<double> VectorScorer::Embed(std::string_view sentence) const {
  std::vector<double> sum(dim_, 0.0);
  for (const text::Token& t : text::Tokenize(sentence)) {
    if (t.pos == text::Pos::kPunct) continue;
    auto it = vectors_.find(text::ToLower(t.surface));
    if (it == vectors_.end()) it = vectors_.find(text::ToLower(t.lemma));
    if (it == vectors_.end()) continue;
    for (std::size_t i = 0; i < dim_; ++i) sum[i] += it->second[i];
  }
  return sum;
}

double VectorScorer::Score(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  return Cosine(Embed(a), Embed(b));
}

double RemoteScorer::Score(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  std::vector<std::string> missing;
  {
    std::lock_guard lock(mu_);
    for (std::string_view s : {a, b}) {
      if (!cache_.count(s)) missing.emplace_back(s);
    }
  }
  if (!missing.empty()) {
    std::vector<std::vector<double>> vectors;
    try {
      vectors = client_->Embed(missing);
    } catch (const Error& e) {
      throw Error(ErrorCode::kScorerUnavailable, e.what());
    }
    std::lock_guard lock(mu_);
    for (std::size_t i = 0; i < missing.size(); ++i) cache_[missing[i]] = vectors[i];
  }
  std::lock_guard lock(mu_);
  return Cosine(cache_.find(a)->second, cache_.find(b)->second);
}

std::unique_ptr<Scorer> MakeScorer(const ScorerConfig& config, const lex::SynonymLexicon& lexicon) {
  if (config.kind == "fallback") return std::make_unique<FallbackScorer>(lexicon);
  if (config.kind == "vectors") {
    return std::make_unique<VectorScorer>(VectorScorer::Load(config.vectors_path));
  }
  if (config.kind == "remote") {
    const net::Endpoint endpoint = net::EmbedEndpointFromEnv();
    if (endpoint.url.empty()) {
      throw Error(ErrorCode::kScorerUnavailable, "SYMDRIFT_EMBED_URL is not set");
    }
    return std::make_unique<RemoteScorer>(std::make_shared<net::HttpEmbeddingClient>(endpoint));
  }
  throw Error(ErrorCode::kScorerUnavailable, "unknown scorer '" + config.kind + "'");
}

}  // namespace symdrift::sim

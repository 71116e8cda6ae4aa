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

// Remote model access: an OpenAI-compatible chat client, an embedding client,
// a shared token-bucket rate limiter, and retry with exponential backoff.

#ifndef SYMDRIFT_NET_H_
#define SYMDRIFT_NET_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

namespace symdrift::net {

struct Usage {
  std::size_t tokens_in = 0;
  std::size_t tokens_out = 0;

  Usage& operator+=(const Usage& o) {
    tokens_in += o.tokens_in;
    tokens_out += o.tokens_out;
    return *this;
  }
  bool operator==(const Usage&) const = default;
};

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatReply {
  std::string text;
  Usage usage;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws kClientError when the service cannot be reached or replies with
  // something unusable.
  virtual ChatReply Complete(const std::vector<ChatMessage>& messages, double temperature) = 0;
};

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per text, all of equal length.
  virtual std::vector<std::vector<double>> Embed(const std::vector<std::string>& texts) = 0;
};

// Classic token bucket shared by every worker talking to one service.
class TokenBucket {
 public:
  TokenBucket(double rate_per_second, double burst);
  void Acquire();

 private:
  std::mutex mu_;
  double rate_;
  double burst_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
};

struct Endpoint {
  std::string url;  // full URL, e.g. http://localhost:8000/v1/chat/completions
  std::string api_key;
  std::string model;
  double timeout_s = 60;
  int retries = 3;
  double backoff_s = 0.5;  // doubled after every failed attempt
};

// Reads SYMDRIFT_LLM_URL, SYMDRIFT_LLM_KEY and SYMDRIFT_LLM_MODEL.
Endpoint ChatEndpointFromEnv();
// Reads SYMDRIFT_EMBED_URL plus the shared key.
Endpoint EmbedEndpointFromEnv();

// Calls `attempt` up to `retries + 1` times with exponential backoff; the last
// failure is rethrown as kClientError.
void WithRetries(int retries, double backoff_s, const std::function<void()>& attempt);

class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(Endpoint endpoint, TokenBucket* limiter = nullptr);
  ChatReply Complete(const std::vector<ChatMessage>& messages, double temperature) override;

 private:
  Endpoint endpoint_;
  TokenBucket* limiter_;
};

// POSTs {"input": [...], "model": ...}; accepts either {"data": [{"embedding": [...]}]}
// or {"embeddings": [[...]]} or a bare list of vectors.
class HttpEmbeddingClient : public EmbeddingClient {
 public:
  explicit HttpEmbeddingClient(Endpoint endpoint, TokenBucket* limiter = nullptr);
  std::vector<std::vector<double>> Embed(const std::vector<std::string>& texts) override;

 private:
  Endpoint endpoint_;
  TokenBucket* limiter_;
};

// Splits a URL into "scheme://host:port" and the path (with query).
std::pair<std::string, std::string> SplitUrl(const std::string& url);

}  // namespace symdrift::net

#endif  // SYMDRIFT_NET_H_

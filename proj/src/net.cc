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

#include "symdrift/net.h"

#include <httplib.h>

#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "symdrift/error.h"

namespace symdrift::net {

using nlohmann::json;

namespace {

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

json PostJson(const Endpoint& endpoint, const json& body) {
  const auto [base, path] = SplitUrl(endpoint.url);
  httplib::Client client(base);
  const auto seconds = static_cast<time_t>(endpoint.timeout_s);
  const auto micros = static_cast<time_t>((endpoint.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint.api_key);
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kClientError,
                "request to " + endpoint.url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::kClientError,
                endpoint.url + " returned HTTP " + std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kClientError, std::string("malformed JSON reply: ") + e.what());
  }
}

}  // namespace

TokenBucket::TokenBucket(double rate_per_second, double burst)
    : rate_(rate_per_second), burst_(burst), tokens_(burst), last_(std::chrono::steady_clock::now()) {}

void TokenBucket::Acquire() {
  std::unique_lock lock(mu_);
  while (true) {
    const auto now = std::chrono::steady_clock::now();
    tokens_ = std::min(burst_, tokens_ + rate_ * std::chrono::duration<double>(now - last_).count());
    last_ = now;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait = (1.0 - tokens_) / rate_;
    lock.unlock();
    std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    lock.lock();
  }
}

Endpoint ChatEndpointFromEnv() {
  Endpoint e;
  e.url = Env("SYMDRIFT_LLM_URL");
  e.api_key = Env("SYMDRIFT_LLM_KEY");
  e.model = Env("SYMDRIFT_LLM_MODEL");
  return e;
}

Endpoint EmbedEndpointFromEnv() {
  Endpoint e;
  e.url = Env("SYMDRIFT_EMBED_URL");
  e.api_key = Env("SYMDRIFT_LLM_KEY");
  e.model = Env("SYMDRIFT_EMBED_MODEL");
  return e;
}

void WithRetries(int retries, double backoff_s, const std::function<void()>& attempt) {
  double delay = backoff_s;
  for (int i = 0;; ++i) {
    try {
      attempt();
      return;
    } catch (const std::exception& e) {
      if (i >= retries) {
        if (const auto* err = dynamic_cast<const Error*>(&e);
            err && err->code() == ErrorCode::kClientError) {
          throw;
        }
        throw Error(ErrorCode::kClientError, e.what());
      }
    }
    if (delay > 0) std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    delay *= 2;
  }
}

std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kClientError, "URL without scheme: '" + url + "'");
  }
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

HttpChatClient::HttpChatClient(Endpoint endpoint, TokenBucket* limiter)
    : endpoint_(std::move(endpoint)), limiter_(limiter) {
  if (endpoint_.url.empty()) throw Error(ErrorCode::kClientError, "chat endpoint URL is not set");
}

ChatReply HttpChatClient::Complete(const std::vector<ChatMessage>& messages, double temperature) {
  json body = {{"temperature", temperature}, {"messages", json::array()}};
  if (!endpoint_.model.empty()) body["model"] = endpoint_.model;
  for (const ChatMessage& m : messages) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  ChatReply reply;
  WithRetries(endpoint_.retries, endpoint_.backoff_s, [&] {
    if (limiter_) limiter_->Acquire();
    const json res = PostJson(endpoint_, body);
    try {
      reply.text = res.at("choices").at(0).at("message").at("content").get<std::string>();
      if (res.contains("usage")) {
        reply.usage.tokens_in = res["usage"].value("prompt_tokens", std::size_t{0});
        reply.usage.tokens_out = res["usage"].value("completion_tokens", std::size_t{0});
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kClientError, std::string("unexpected chat reply: ") + e.what());
    }
  });
  return reply;
}

HttpEmbeddingClient::HttpEmbeddingClient(Endpoint endpoint, TokenBucket* limiter)
    : endpoint_(std::move(endpoint)), limiter_(limiter) {
  if (endpoint_.url.empty()) {
    throw Error(ErrorCode::kScorerUnavailable, "embedding endpoint URL is not set");
  }
}

std::vector<std::vector<double>> HttpEmbeddingClient::Embed(const std::vector<std::string>& texts) {
  json body = {{"input", texts}};
  if (!endpoint_.model.empty()) body["model"] = endpoint_.model;
  std::vector<std::vector<double>> out;
  WithRetries(endpoint_.retries, endpoint_.backoff_s, [&] {
    if (limiter_) limiter_->Acquire();
    const json res = PostJson(endpoint_, body);
    out.clear();
    try {
      if (res.is_array()) {
        out = res.get<std::vector<std::vector<double>>>();
      } else if (res.contains("embeddings")) {
        out = res["embeddings"].get<std::vector<std::vector<double>>>();
      } else {
        for (const json& item : res.at("data")) {
          out.push_back(item.at("embedding").get<std::vector<double>>());
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kClientError, std::string("unexpected embedding reply: ") + e.what());
    }
    if (out.size() != texts.size()) {
      throw Error(ErrorCode::kClientError, "embedding count does not match input count");
    }
    for (const auto& v : out) {
      if (v.size() != out.front().size()) {
        throw Error(ErrorCode::kClientError, "embedding vectors differ in length");
      }
    }
  });
  return out;
}

}  // namespace symdrift::net

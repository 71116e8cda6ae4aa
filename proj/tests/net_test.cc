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

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <json.hpp>
#include <thread>

#include "support/fixtures.h"
#include "symdrift/error.h"
#include "symdrift/harness.h"

namespace symdrift::net {
namespace {

using nlohmann::json;

// Local OpenAI-style endpoint on an ephemeral port.
class FakeService {
 public:
  explicit FakeService(int failures_before_success = 0) : failures_(failures_before_success) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (failures_-- > 0) {
        res.status = 503;
        return;
      }
      const json body = json::parse(req.body);
      const std::string echo = body["messages"].back()["content"];
      res.set_content(json{{"choices", {{{"message", {{"content", "echo: " + echo}}}}}},
                           {"usage", {{"prompt_tokens", 12}, {"completion_tokens", 3}}}}
                          .dump(),
                      "application/json");
    });
    server_.Post("/v1/embeddings", [](const httplib::Request& req, httplib::Response& res) {
      const json body = json::parse(req.body);
      json data = json::array();
      for (const auto& text : body["input"]) {
        json item = json::object();
        item["embedding"] = std::vector<double>{static_cast<double>(text.get<std::string>().size()), 1.0};
        data.push_back(item);
      }
      json reply = json::object();
      reply["data"] = data;
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string Url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }
  int requests() const { return requests_; }
  const std::string& last_body() const { return last_body_; }
  const std::string& last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> failures_;
  std::atomic<int> requests_{0};
  std::string last_body_;
  std::string last_auth_;
};

Endpoint At(const std::string& url) {
  Endpoint e;
  e.url = url;
  e.api_key = "secret";
  e.model = "tiny";
  e.timeout_s = 5;
  e.backoff_s = 0.01;
  return e;
}

TEST(HttpChatClient, SendsMessagesAndReadsUsage) {
  FakeService service;
  HttpChatClient client(At(service.Url("/v1/chat/completions")));
  const ChatReply reply = client.Complete({{"system", "be terse"}, {"user", "hello"}}, 0.2);
  EXPECT_EQ(reply.text, "echo: hello");
  EXPECT_EQ(reply.usage, (Usage{12, 3}));
  const json sent = json::parse(service.last_body());
  EXPECT_EQ(sent["model"], "tiny");
  EXPECT_EQ(sent["temperature"], 0.2);
  EXPECT_EQ(sent["messages"].size(), 2u);
  EXPECT_EQ(service.last_auth(), "Bearer secret");
}

TEST(HttpChatClient, RetriesTransientFailures) {
  FakeService service(2);
  HttpChatClient client(At(service.Url("/v1/chat/completions")));
  EXPECT_EQ(client.Complete({{"user", "x"}}, 0).text, "echo: x");
  EXPECT_EQ(service.requests(), 3);
}

TEST(HttpChatClient, GivesUpAfterRetries) {
  FakeService service(10);
  HttpChatClient client(At(service.Url("/v1/chat/completions")));
  try {
    client.Complete({{"user", "x"}}, 0);
    FAIL() << "expected ClientError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClientError);
  }
  EXPECT_EQ(service.requests(), 4);  // first attempt plus three retries
}

TEST(HttpChatClient, UnreachableIsClientError) {
  Endpoint e = At("http://127.0.0.1:1/v1/chat/completions");
  e.retries = 0;
  HttpChatClient client(e);
  try {
    client.Complete({{"user", "x"}}, 0);
    FAIL() << "expected ClientError";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kClientError);
  }
  EXPECT_THROW(HttpChatClient(At("")), Error);
}

TEST(HttpEmbeddingClient, OneVectorPerText) {
  FakeService service;
  HttpEmbeddingClient client(At(service.Url("/v1/embeddings")));
  const auto v = client.Embed({"a", "abc"});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], (std::vector<double>{3.0, 1.0}));
}

TEST(TokenBucket, SpacesRequestsAfterBurst) {
  TokenBucket bucket(50, 2);  // 2 immediately, then one per 20 ms
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 7; ++i) bucket.Acquire();
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_GE(elapsed, 0.09);
  EXPECT_LT(elapsed, 1.0);
}

TEST(TokenBucket, SharedAcrossThreads) {
  TokenBucket bucket(100, 1);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) bucket.Acquire();
    });
  }
  for (auto& t : threads) t.join();
  // 20 acquisitions at 100/s with a burst of one need at least 190 ms.
  EXPECT_GE(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 0.18);
}

TEST(WithRetries, BacksOffThenRethrowsAsClientError) {
  int attempts = 0;
  try {
    WithRetries(2, 0, [&] {
      ++attempts;
      throw std::runtime_error("boom");
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClientError);
  }
  EXPECT_EQ(attempts, 3);
}

TEST(HttpChatClient, RunFromEnvironmentWithRateLimit) {
  FakeService service;
  ::setenv("SYMDRIFT_LLM_URL", service.Url("/v1/chat/completions").c_str(), 1);
  harness::RunConfig c;
  c.translator = "llm";
  c.rate_limit = 100;
  c.workers = 2;
  std::vector<Problem> data(3, testing::KindFixture());
  for (std::size_t i = 0; i < data.size(); ++i) data[i].id += std::to_string(i);
  const harness::RunReport r = harness::RunEvaluation(data, c);
  ::unsetenv("SYMDRIFT_LLM_URL");
  EXPECT_EQ(service.requests(), 3);
  EXPECT_EQ(r.tokens_in, 36u);
  EXPECT_EQ(r.tokens_out, 9u);
  ASSERT_EQ(r.records.size(), 3u);
  for (const auto& record : r.records) EXPECT_EQ(record.raw_output.rfind("echo: ", 0), 0u);
}

TEST(SplitUrl, Parts) {
  EXPECT_EQ(SplitUrl("http://h:8000/v1/chat?x=1"), (std::pair<std::string, std::string>{"http://h:8000", "/v1/chat?x=1"}));
  EXPECT_EQ(SplitUrl("https://h").second, "/");
  EXPECT_THROW(SplitUrl("localhost:8000"), Error);
}

}  // namespace
}  // namespace symdrift::net

// Copyright 2026 The SITK Authors.
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

#ifndef SITK_TESTS_MOCK_CHAT_SERVER_H_
#define SITK_TESTS_MOCK_CHAT_SERVER_H_

// In-process stand-in for a chat-completions endpoint. Each request's user
// message is reduced to the sentence between <sentence> tags and handed to a
// scripted handler together with how often that sentence was seen before.

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace sitk {
namespace testing {

struct MockReply {
  int status = 200;
  std::string content;  // assistant message content for 200 replies
};

class MockChatServer {
 public:
  using Handler = std::function<MockReply(const std::string &sentence, int seen)>;

  explicit MockChatServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request &req, httplib::Response &res) {
                   Serve(req, res);
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockChatServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  int requests() const { return requests_; }
  int max_in_flight() const { return max_in_flight_; }
  std::string last_body() const {
    std::lock_guard<std::mutex> lock(mu_);
    return last_body_;
  }
  std::string last_auth() const {
    std::lock_guard<std::mutex> lock(mu_);
    return last_auth_;
  }

  // Extracts the text between <sentence> and </sentence>.
  static std::string SentenceOf(const std::string &prompt) {
    const std::string open = "<sentence>", close = "</sentence>";
    const size_t b = prompt.rfind(open);
    const size_t e = prompt.rfind(close);
    if (b == std::string::npos || e == std::string::npos || e < b) return "";
    return prompt.substr(b + open.size(), e - b - open.size());
  }

  static std::string Envelope(const std::string &content) {
    nlohmann::json j = {
        {"id", "mock"},
        {"object", "chat.completion"},
        {"choices",
         {{{"index", 0},
           {"message", {{"role", "assistant"}, {"content", content}}},
           {"finish_reason", "stop"}}}}};
    return j.dump();
  }

 private:
  void Serve(const httplib::Request &req, httplib::Response &res) {
    const int now = ++in_flight_;
    for (int seen = max_in_flight_; now > seen &&
                                    !max_in_flight_.compare_exchange_weak(seen, now);) {
    }
    ++requests_;
    std::string sentence;
    int seen = 0;
    try {
      const auto body = nlohmann::json::parse(req.body);
      sentence = SentenceOf(body.at("messages").at(0).at("content").get<std::string>());
    } catch (...) {
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      seen = seen_[sentence]++;
    }
    const MockReply reply = handler_(sentence, seen);
    res.status = reply.status;
    if (reply.status == 200) {
      res.set_content(Envelope(reply.content), "application/json");
    } else {
      res.set_content("{\"error\":\"scripted\"}", "application/json");
    }
    --in_flight_;
  }

  Handler handler_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  mutable std::mutex mu_;
  std::map<std::string, int> seen_;
  std::string last_body_;
  std::string last_auth_;
};

}  // namespace testing
}  // namespace sitk

#endif  // SITK_TESTS_MOCK_CHAT_SERVER_H_

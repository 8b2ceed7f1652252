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

#ifndef SITK_CHAT_CLIENT_H_
#define SITK_CHAT_CLIENT_H_

#include <optional>
#include <string>

#include "sitk/config.h"
#include "sitk/error.h"

namespace sitk {

inline constexpr char kApiKeyEnv[] = "API_KEY";

struct ModelConfig {
  std::string model_id;
  std::string endpoint_url;  // full URL of the chat-completions route
  double price_per_sentence_usd = 0.0;
  int max_retries = 3;
  int timeout_ms = 60000;
  double temperature = 0.0;
  bool json_mode = true;
  int backoff_base_ms = 1000;

  // Throws DataError on a negative price or retry count, a non-positive
  // timeout, json_mode == false or an empty model id / endpoint.
  void Validate() const;

  // Reads model_id, endpoint_url, price_per_sentence_usd, max_retries,
  // timeout_ms, temperature, json_mode and backoff_base_ms. Unknown keys are
  // not checked here; the caller owns the full key set.
  static ModelConfig FromConfig(const KeyValueConfig &config);
};

enum class ChatErrorKind {
  kRateLimited,  // HTTP 429
  kServer,       // HTTP 5xx
  kTransport,    // timeout, refused connection, reset
  kAuth,         // missing key, 401, 403
  kRequest,      // other 4xx
  kBadReply,     // 200 without a usable message
};

std::string_view ChatErrorKindName(ChatErrorKind kind);

class ChatError : public Error {
 public:
  ChatError(ChatErrorKind kind, int status, const std::string &message)
      : Error(message), kind_(kind), status_(status) {}
  ChatErrorKind kind() const { return kind_; }
  int status() const { return status_; }  // 0 when no HTTP status exists
  bool retryable() const {
    return kind_ == ChatErrorKind::kRateLimited ||
           kind_ == ChatErrorKind::kServer ||
           kind_ == ChatErrorKind::kTransport;
  }

 private:
  ChatErrorKind kind_;
  int status_;
};

// One chat-completion round trip: prompt in, assistant message content out.
// Throws ChatError.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string Complete(const std::string &prompt) = 0;
};

// JSON-mode chat completions over HTTP(S). The bearer token comes from the
// API_KEY environment variable, read when the first request is made so that
// fully cached runs need no key.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ModelConfig config,
                          std::optional<std::string> api_key = std::nullopt);
  std::string Complete(const std::string &prompt) override;

  // The request body sent for `prompt`.
  static std::string RequestBody(const ModelConfig &config,
                                 const std::string &prompt);

 private:
  ModelConfig config_;
  std::optional<std::string> api_key_;
};

}  // namespace sitk

#endif  // SITK_CHAT_CLIENT_H_

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

#include "sitk/chat_client.h"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace sitk {
namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url SplitUrl(const std::string &url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw DataError("endpoint_url needs a scheme: " + url);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

void ModelConfig::Validate() const {
  if (model_id.empty()) throw DataError("model_id is empty");
  if (endpoint_url.empty()) throw DataError("endpoint_url is empty");
  if (price_per_sentence_usd < 0) throw DataError("price_per_sentence_usd < 0");
  if (max_retries < 0) throw DataError("max_retries < 0");
  if (timeout_ms <= 0) throw DataError("timeout_ms must be positive");
  if (backoff_base_ms < 0) throw DataError("backoff_base_ms < 0");
  if (!json_mode) throw DataError("json_mode must be true");
}

ModelConfig ModelConfig::FromConfig(const KeyValueConfig &config) {
  ModelConfig m;
  m.model_id = config.GetString("model_id", m.model_id);
  m.endpoint_url = config.GetString("endpoint_url", m.endpoint_url);
  m.price_per_sentence_usd =
      config.GetDouble("price_per_sentence_usd", m.price_per_sentence_usd);
  m.max_retries = static_cast<int>(config.GetInt("max_retries", m.max_retries));
  m.timeout_ms = static_cast<int>(config.GetInt("timeout_ms", m.timeout_ms));
  m.temperature = config.GetDouble("temperature", m.temperature);
  m.json_mode = config.GetBool("json_mode", m.json_mode);
  m.backoff_base_ms =
      static_cast<int>(config.GetInt("backoff_base_ms", m.backoff_base_ms));
  return m;
}

std::string_view ChatErrorKindName(ChatErrorKind kind) {
  switch (kind) {
    case ChatErrorKind::kRateLimited: return "rate_limited";
    case ChatErrorKind::kServer: return "server_error";
    case ChatErrorKind::kTransport: return "transport_error";
    case ChatErrorKind::kAuth: return "auth_error";
    case ChatErrorKind::kRequest: return "request_error";
    case ChatErrorKind::kBadReply: return "bad_reply";
  }
  return "unknown";
}

HttpChatClient::HttpChatClient(ModelConfig config,
                               std::optional<std::string> api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  config_.Validate();
}

std::string HttpChatClient::RequestBody(const ModelConfig &config,
                                        const std::string &prompt) {
  nlohmann::json body = {
      {"model", config.model_id},
      {"messages", {{{"role", "user"}, {"content", prompt}}}},
      {"response_format", {{"type", "json_object"}}},
      {"temperature", config.temperature},
  };
  return body.dump();
}

std::string HttpChatClient::Complete(const std::string &prompt) {
  std::string key;
  if (api_key_) {
    key = *api_key_;
  } else if (const char *env = std::getenv(kApiKeyEnv); env && *env) {
    key = env;
  } else {
    throw ChatError(ChatErrorKind::kAuth, 0,
                    std::string("environment variable ") + kApiKeyEnv +
                        " is not set");
  }

  const Url url = SplitUrl(config_.endpoint_url);
  httplib::Client client(url.origin);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_bearer_token_auth(key);

  auto res = client.Post(url.path, RequestBody(config_, prompt),
                         "application/json");
  if (!res) {
    throw ChatError(ChatErrorKind::kTransport, 0,
                    "request to " + config_.endpoint_url + " failed: " +
                        httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 429) {
    throw ChatError(ChatErrorKind::kRateLimited, status, "rate limited (429)");
  }
  if (status >= 500) {
    throw ChatError(ChatErrorKind::kServer, status,
                    "server error " + std::to_string(status));
  }
  if (status == 401 || status == 403) {
    throw ChatError(ChatErrorKind::kAuth, status,
                    "authentication rejected (" + std::to_string(status) + ")");
  }
  if (status < 200 || status >= 300) {
    throw ChatError(ChatErrorKind::kRequest, status,
                    "unexpected status " + std::to_string(status));
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception &e) {
    throw ChatError(ChatErrorKind::kBadReply, status,
                    std::string("no message content in reply: ") + e.what());
  }
}

}  // namespace sitk

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

#ifndef SITK_PIPELINE_H_
#define SITK_PIPELINE_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sitk/cache.h"
#include "sitk/chat_client.h"
#include "sitk/corpus.h"
#include "sitk/prompt.h"
#include "sitk/validate.h"

namespace sitk {

struct PipelineOptions {
  int parallelism = 1;
  uint64_t seed = 0;  // backoff jitter
  ValidatorOptions validator;
  // Where ConvertCorpus persists progress. When set, finished records are
  // appended to <output>.partial.jsonl, a manifest is kept at
  // <output>.manifest.json, and the final ordered file replaces <output>.
  std::optional<std::filesystem::path> output_path;
  // Polled before each sentence is started; returning true stops the run
  // with UserAbort after in-flight sentences finish.
  std::function<bool()> should_stop;
  // Injected for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

struct PipelineStats {
  int64_t network_calls = 0;
  int64_t cache_hits = 0;
  int64_t retries = 0;
  int64_t failures = 0;
};

// Raised by ConvertSentence when a request cannot be completed.
class ConversionError : public Error {
 public:
  ConversionError(const std::string &message, ChatErrorKind kind, int attempts)
      : Error(message), kind_(kind), attempts_(attempts) {}
  ChatErrorKind kind() const { return kind_; }
  int attempts() const { return attempts_; }

 private:
  ChatErrorKind kind_;
  int attempts_;
};

// Single-call conversion: the whole three-step prompt goes out as one chat
// request, and the cache is consulted before any network traffic.
class Pipeline {
 public:
  // `cache` may be null (no caching). `client` must outlive the pipeline and
  // be safe to call from several threads.
  Pipeline(ModelConfig config, ChatClient *client, ResponseCache *cache,
           PromptTemplate tmpl = PromptTemplate::Default(),
           PipelineOptions options = {});

  // Retries timeouts, 429 and 5xx with exponential backoff
  // (base * 2^attempt, +-20% jitter) up to max_retries times. Throws
  // ConversionError when retries run out or on authentication failure.
  // Parse failures do not throw: the record carries the violation.
  SIRecord ConvertSentence(const SegmentPair &pair);

  // One record per pair, in input order. Failed requests become records
  // flagged REQUEST_FAILED; authentication failures abort the run.
  std::vector<SIRecord> ConvertCorpus(const Corpus &corpus);

  PipelineStats stats() const;
  const ModelConfig &config() const { return config_; }

  // Delay before retry number `attempt` (0-based), jitter included.
  std::chrono::milliseconds Backoff(int attempt, uint64_t stream) const;

 private:
  SIRecord BuildRecord(const SegmentPair &pair, const std::string &raw) const;

  ModelConfig config_;
  ChatClient *client_;
  ResponseCache *cache_;
  PromptTemplate template_;
  PipelineOptions options_;

  std::atomic<int64_t> network_calls_{0};
  std::atomic<int64_t> cache_hits_{0};
  std::atomic<int64_t> retries_{0};
  std::atomic<int64_t> failures_{0};
};

// n * price_per_sentence_usd.
double EstimateCost(int64_t n_sentences, const ModelConfig &config);

}  // namespace sitk

#endif  // SITK_PIPELINE_H_

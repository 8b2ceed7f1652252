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

#include "sitk/pipeline.h"

#include <algorithm>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"
#include "sitk/io.h"
#include "sitk/log.h"
#include "sitk/response.h"

namespace sitk {
namespace {

std::filesystem::path WithSuffix(const std::filesystem::path &path,
                                 const char *suffix) {
  std::filesystem::path out = path;
  out += suffix;
  return out;
}

// Progress file for an interrupted or running corpus conversion.
class Manifest {
 public:
  Manifest(std::optional<std::filesystem::path> output, size_t total)
      : output_(std::move(output)), total_(total) {
    if (!output_) return;
    partial_.open(WithSuffix(*output_, ".partial.jsonl"),
                  std::ios::binary | std::ios::trunc);
    if (!partial_) throw IoError("cannot write partial results next to " + output_->string());
    Flush(false);
  }

  void Record(const SIRecord &record, bool failed) {
    if (!output_) return;
    std::lock_guard<std::mutex> lock(mu_);
    ++completed_;
    if (failed) failed_ids_.push_back(record.source_id);
    partial_ << ToJson(record).dump() << '\n';
    partial_.flush();
    if (failed || completed_ % 32 == 0) FlushLocked(false);
  }

  void Finish(bool done) {
    if (!output_) return;
    std::lock_guard<std::mutex> lock(mu_);
    FlushLocked(done);
  }

 private:
  void Flush(bool done) {
    std::lock_guard<std::mutex> lock(mu_);
    FlushLocked(done);
  }
  void FlushLocked(bool done) {
    nlohmann::json j = {{"output", output_->string()},
                        {"total", total_},
                        {"completed", completed_},
                        {"failed", failed_ids_},
                        {"finished", done}};
    WriteFileAtomic(WithSuffix(*output_, ".manifest.json"), j.dump(2) + "\n");
  }

  std::optional<std::filesystem::path> output_;
  size_t total_;
  size_t completed_ = 0;
  std::vector<std::string> failed_ids_;
  std::ofstream partial_;
  std::mutex mu_;
};

}  // namespace

Pipeline::Pipeline(ModelConfig config, ChatClient *client, ResponseCache *cache,
                   PromptTemplate tmpl, PipelineOptions options)
    : config_(std::move(config)),
      client_(client),
      cache_(cache),
      template_(std::move(tmpl)),
      options_(std::move(options)) {
  config_.Validate();
  template_.Validate();
  if (options_.parallelism < 1) throw DataError("parallelism must be >= 1");
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
}

std::chrono::milliseconds Pipeline::Backoff(int attempt,
                                            uint64_t stream) const {
  std::mt19937_64 rng(options_.seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^
                      static_cast<uint64_t>(attempt));
  std::uniform_real_distribution<double> jitter(0.8, 1.2);
  const double base = static_cast<double>(config_.backoff_base_ms) *
                      static_cast<double>(1LL << std::min(attempt, 30));
  return std::chrono::milliseconds(static_cast<int64_t>(base * jitter(rng)));
}

SIRecord Pipeline::BuildRecord(const SegmentPair &pair,
                               const std::string &raw) const {
  SIRecord record;
  record.source_id = pair.id;
  record.model_id = config_.model_id;
  record.raw_response = raw;
  record.cost_usd = config_.price_per_sentence_usd;
  try {
    ParsedResponse parsed = ParseResponse(raw);
    record.chunks = std::move(parsed.chunks);
    record.chunk_translations = std::move(parsed.chunk_translations);
    record.final_text = std::move(parsed.final_text);
  } catch (const ResponseError &e) {
    record.validation.Add(e.code(), std::nullopt, e.what());
    return record;
  }
  record.validation =
      ValidateRecord(record, pair.source_text, options_.validator);
  return record;
}

SIRecord Pipeline::ConvertSentence(const SegmentPair &pair) {
  const std::string prompt = BuildPrompt(pair.source_text, template_);
  if (cache_) {
    if (auto hit = cache_->Get(config_.model_id, prompt)) {
      ++cache_hits_;
      return BuildRecord(pair, hit->response);
    }
  }
  if (!client_) throw ConversionError("no chat client configured", ChatErrorKind::kTransport, 0);

  const uint64_t stream = std::hash<std::string>{}(pair.id);
  for (int attempt = 0;; ++attempt) {
    ++network_calls_;
    try {
      std::string raw = client_->Complete(prompt);
      if (attempt > 0) {
        Log(LogLevel::kInfo, pair.id + ": succeeded after " +
                                 std::to_string(attempt) + " retries");
      }
      if (cache_) cache_->Put(config_.model_id, prompt, raw);
      return BuildRecord(pair, raw);
    } catch (const ChatError &e) {
      if (!e.retryable() || attempt >= config_.max_retries) {
        throw ConversionError(pair.id + ": " + e.what() + " after " +
                                  std::to_string(attempt + 1) + " attempts",
                              e.kind(), attempt + 1);
      }
      const auto delay = Backoff(attempt, stream);
      ++retries_;
      Log(LogLevel::kInfo, pair.id + ": " + std::string(ChatErrorKindName(e.kind())) +
                               ", retry " + std::to_string(attempt + 1) + "/" +
                               std::to_string(config_.max_retries) + " in " +
                               std::to_string(delay.count()) + " ms");
      options_.sleep(delay);
    }
  }
}

std::vector<SIRecord> Pipeline::ConvertCorpus(const Corpus &corpus) {
  const size_t n = corpus.pairs.size();
  std::vector<std::optional<SIRecord>> slots(n);
  Manifest manifest(options_.output_path, n);

  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mu;
  std::exception_ptr fatal;

  auto worker = [&] {
    while (!stop) {
      if (next.load() >= n) break;
      if (options_.should_stop && options_.should_stop()) {
        stop = true;
        break;
      }
      const size_t i = next.fetch_add(1);
      if (i >= n) break;
      const SegmentPair &pair = corpus.pairs[i];
      try {
        slots[i] = ConvertSentence(pair);
        manifest.Record(*slots[i], false);
      } catch (const ConversionError &e) {
        if (e.kind() == ChatErrorKind::kAuth) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!fatal) fatal = std::current_exception();
          stop = true;
          break;
        }
        ++failures_;
        Log(LogLevel::kWarning, e.what());
        SIRecord failed;
        failed.source_id = pair.id;
        failed.model_id = config_.model_id;
        failed.validation.Add(ViolationCode::kRequestFailed, std::nullopt,
                              e.what());
        slots[i] = std::move(failed);
        manifest.Record(*slots[i], true);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!fatal) fatal = std::current_exception();
        stop = true;
        break;
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<size_t>(options_.parallelism, std::max<size_t>(n, 1)));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto &t : pool) t.join();

  if (fatal) {
    manifest.Finish(false);
    std::rethrow_exception(fatal);
  }
  const bool incomplete = std::any_of(slots.begin(), slots.end(),
                                      [](const auto &s) { return !s; });
  if (incomplete) {
    manifest.Finish(false);
    throw UserAbort("conversion stopped before completion; rerun to resume");
  }

  std::vector<SIRecord> out;
  out.reserve(n);
  for (auto &slot : slots) out.push_back(std::move(*slot));
  if (options_.output_path) {
    SaveRecords(out, *options_.output_path);
    manifest.Finish(true);
  }
  return out;
}

PipelineStats Pipeline::stats() const {
  return {network_calls_.load(), cache_hits_.load(), retries_.load(),
          failures_.load()};
}

double EstimateCost(int64_t n_sentences, const ModelConfig &config) {
  if (n_sentences < 0) throw DataError("sentence count must be >= 0");
  return static_cast<double>(n_sentences) * config.price_per_sentence_usd;
}

}  // namespace sitk

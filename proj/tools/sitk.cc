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

// sitk: command-line front end.
//
// Exit codes: 0 success, 1 I/O or transport failure, 2 bad input data or
// usage, 3 aborted by the user.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "sitk/analytics.h"
#include "sitk/cache.h"
#include "sitk/chat_client.h"
#include "sitk/chunker.h"
#include "sitk/config.h"
#include "sitk/corpus_inl.h"
#include "sitk/io.h"
#include "sitk/log.h"
#include "sitk/pipeline.h"
#include "sitk/quality.h"
#include "sitk/report.h"
#include "sitk/validate.h"

namespace sitk {
namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void OnSignal(int) { g_interrupted.store(true); }

struct Globals {
  std::string config;
  std::optional<int> parallelism;
  std::string cache_dir = ".sitk_cache";
  uint64_t seed = 0;
  int verbose = 0;
  bool quiet = false;
};

// Progress and summaries go to stdout, one line at a time.
void Say(const std::string &line) {
  std::cout << line << std::endl;
}

std::string Usd(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "$%.4f", v);
  return buf;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

Corpus LoadAnyCorpus(const std::string &path) {
  return LoadCorpus(path, FormatFromPath(path));
}

void EnsureParent(const std::filesystem::path &path) {
  const auto parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
}

void EnsureDir(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

// ---- chunk

struct ChunkArgs {
  std::string input;
  std::string output;
  bool no_r2 = false;
  int min_chunk_tokens = 1;
};

int RunChunk(const ChunkArgs &a) {
  const Corpus corpus = LoadAnyCorpus(a.input);
  ChunkOptions options;
  options.apply_r2 = !a.no_r2;
  options.min_chunk_tokens = a.min_chunk_tokens;
  const ChunkedCorpus chunked = ChunkCorpus(corpus, options);
  std::string out;
  for (size_t i = 0; i < chunked.sentences.size(); ++i) {
    out += ToJson(chunked.sentences[i], chunked.ids[i]).dump() + "\n";
  }
  if (a.output.empty() || a.output == "-") {
    std::cout << out << std::flush;
  } else {
    EnsureParent(a.output);
    WriteFileAtomic(a.output, out);
  }
  for (const auto &f : chunked.failures) {
    Log(LogLevel::kError, "chunk: " + f.id + ": " + f.message);
  }
  std::cerr << "chunked " << chunked.sentences.size() << "/" << corpus.pairs.size()
            << " sentences\n";
  return chunked.failures.empty() ? 0 : 2;
}

// ---- convert

const std::set<std::string> kModelKeys = {
    "model_id",    "endpoint_url", "price_per_sentence_usd", "max_retries",      "timeout_ms",
    "temperature", "json_mode",    "backoff_base_ms",        "confirm_above_usd"};

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string model;
  std::string prompt;
  bool yes = false;
  std::optional<double> confirm_above;
};

int RunConvert(const Globals &g, const ConvertArgs &a) {
  const std::string model_path = a.model.empty() ? g.config : a.model;
  if (model_path.empty()) throw DataError("convert needs --model (or --config)");
  const KeyValueConfig kv = KeyValueConfig::Load(model_path);
  kv.RequireKnownKeys(kModelKeys);
  const ModelConfig model = ModelConfig::FromConfig(kv);
  model.Validate();
  const double threshold = a.confirm_above.value_or(kv.GetDouble("confirm_above_usd", 1.0));

  const Corpus corpus = LoadAnyCorpus(a.input);
  if (corpus.pairs.empty()) throw DataError(a.input + ": corpus is empty");
  const PromptTemplate tmpl =
      a.prompt.empty() ? PromptTemplate::Default() : PromptTemplate::Load(a.prompt, "custom");
  tmpl.Validate();

  ResponseCache cache(g.cache_dir);
  int64_t cached = 0;
  for (const auto &p : corpus.pairs) {
    if (cache.Get(model.model_id, BuildPrompt(p.source_text, tmpl))) ++cached;
  }
  const int64_t n = static_cast<int64_t>(corpus.pairs.size());
  const double estimate = EstimateCost(n - cached, model);
  Say("estimated cost: " + Usd(estimate) + " for " + std::to_string(n - cached) +
      " uncached of " + std::to_string(n) + " sentences (" + model.model_id + ")");
  if (estimate > threshold && !a.yes) {
    throw UserAbort("estimated cost " + Usd(estimate) + " exceeds " + Usd(threshold) +
                    "; rerun with --yes to proceed");
  }

  HttpChatClient client(model);
  PipelineOptions options;
  options.parallelism = g.parallelism.value_or(1);
  options.seed = g.seed;
  options.output_path = a.output;
  options.should_stop = [] { return g_interrupted.load(); };
  EnsureParent(a.output);
  Pipeline pipeline(model, &client, &cache, tmpl, options);
  const auto records = pipeline.ConvertCorpus(corpus);

  const PipelineStats stats = pipeline.stats();
  double cost = 0;
  int64_t failed = 0;
  std::map<std::string, int64_t> codes;
  for (const auto &r : records) {
    cost += r.cost_usd;
    if (!r.validation.passed) ++failed;
    for (const auto &v : r.validation.violations) ++codes[std::string(ViolationCodeName(v.code))];
  }
  Say(std::to_string(records.size()) + " records written to " + a.output);
  Say(std::to_string(stats.cache_hits) + "/" + std::to_string(n) + " cached");
  Say("network calls: " + std::to_string(stats.network_calls) +
      ", retries: " + std::to_string(stats.retries) +
      ", request failures: " + std::to_string(stats.failures));
  Say("records failing validation: " + std::to_string(failed));
  for (const auto &[code, count] : codes) Say("  " + code + ": " + std::to_string(count));
  Say("cost: " + Usd(cost));
  return 0;
}

// ---- validate

struct ValidateArgs {
  std::string records;
  std::string corpus;
  std::string output;
  bool strict = false;
};

int RunValidate(const ValidateArgs &a) {
  const Corpus corpus = LoadAnyCorpus(a.corpus);
  auto records = LoadRecords(a.records);
  std::map<std::string, int64_t> codes;
  int64_t failed = 0;
  for (auto &r : records) {
    const SegmentPair *pair = corpus.Find(r.source_id);
    if (!pair) throw DataError("record " + r.source_id + " has no source pair in " + a.corpus);
    r.validation = Revalidate(r, pair->source_text);
    if (!r.validation.passed) ++failed;
    for (const auto &v : r.validation.violations) ++codes[std::string(ViolationCodeName(v.code))];
  }
  Say("records: " + std::to_string(records.size()) + ", failing: " + std::to_string(failed));
  for (const auto &[code, count] : codes) Say("  " + code + ": " + std::to_string(count));
  if (!a.output.empty()) {
    EnsureParent(a.output);
    SaveRecords(records, a.output);
  }
  return a.strict && failed > 0 ? 2 : 0;
}

// ---- simulate

struct SimulateArgs {
  std::string corpus;
  std::string output_dir;
  std::string k_set;
  std::string agent;
  std::string mode;
};

int RunSimulate(const Globals &g, const SimulateArgs &a) {
  KeyValueConfig kv = g.config.empty() ? KeyValueConfig::Parse("", "defaults")
                                       : KeyValueConfig::Load(g.config);
  if (!a.corpus.empty()) kv.Set("corpus", a.corpus);
  if (!a.output_dir.empty()) kv.Set("output_dir", a.output_dir);
  if (!a.k_set.empty()) kv.Set("k_set", a.k_set);
  if (!a.agent.empty()) kv.Set("agent", a.agent);
  if (!a.mode.empty()) kv.Set("mode", a.mode);
  if (g.parallelism) kv.Set("parallelism", std::to_string(*g.parallelism));
  const RunConfig config = RunConfig::FromConfig(kv);
  if (config.corpus.empty()) throw DataError("no corpus given (corpus = ... or --corpus)");

  const Corpus corpus = LoadAnyCorpus(config.corpus.string());
  const SimulationResult result = RunSimulation(corpus, config, MakeAgentFactory(config));
  WriteSimulation(result, config.output_dir);

  const std::string unit =
      result.points.empty() ? "" : std::string(LatencyUnitName(result.points[0].unit));
  Say("k\tAL\tLAAL\tATD\tBLEU\tchrF\tn  (" + unit + ")");
  for (const auto &p : result.points) {
    Say(std::to_string(p.k) + "\t" + Fixed(p.al, 3) + "\t" + Fixed(p.laal, 3) + "\t" +
        Fixed(p.atd, 3) + "\t" + Fixed(p.bleu, 2) + "\t" + Fixed(p.chrf, 2) + "\t" +
        std::to_string(p.n_utterances));
  }
  Say(std::to_string(result.points.size()) + " points written to " + config.output_dir.string());
  if (!result.failures.empty()) {
    std::map<std::string, int64_t> by_utt;
    for (const auto &f : result.failures) ++by_utt[f.utterance_id];
    std::cerr << result.failures.size() << " runs failed across " << by_utt.size()
              << " utterances\n";
    size_t shown = 0;
    for (const auto &f : result.failures) {
      if (shown++ == 10) {
        std::cerr << "  ...\n";
        break;
      }
      std::cerr << "  " << f.utterance_id << " k=" << f.k << ": " << f.message << "\n";
    }
    return 2;
  }
  return 0;
}

// ---- report

struct NeuralSpec {
  std::string target;  // k or variant name
  std::string metric;
  std::string path;
};

NeuralSpec ParseNeuralSpec(const std::string &text) {
  const size_t a = text.find(':');
  const size_t b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) {
    throw DataError("--neural expects TARGET:METRIC:FILE, got \"" + text + "\"");
  }
  return {text.substr(0, a), text.substr(a + 1, b - a - 1), text.substr(b + 1)};
}

struct ReportArgs {
  std::string kind;
  std::vector<std::string> inputs;
  std::string output_dir = ".";
  std::vector<std::string> neural;
  std::string title;
  std::string tokenize = "ja_char";
};

int RunReportCurve(const ReportArgs &a) {
  if (a.inputs.size() != 1) throw DataError("report curve takes one points file");
  auto points = LoadCurvePoints(a.inputs[0]);
  for (const auto &spec : a.neural) {
    const NeuralSpec n = ParseNeuralSpec(spec);
    int k = 0;
    try {
      k = std::stoi(n.target);
    } catch (const std::exception &) {
      throw DataError("neural target must be a k value, got \"" + n.target + "\"");
    }
    AttachNeuralScore(points, k, n.metric, ImportNeuralScores(n.path));
  }
  const std::filesystem::path dir = a.output_dir;
  EnsureDir(dir);
  WriteFileAtomic(dir / "curve.csv", CurveCsv(points));
  for (const auto &[name, svg] : CurveSvgs(points)) WriteFileAtomic(dir / name, svg);
  if (!a.neural.empty()) SaveCurvePoints(points, dir / "points.jsonl");
  Say("curve: " + std::to_string(points.size()) + " points -> " + dir.string());
  return 0;
}

// id -> chunk count, from chunker output or SI records.
std::vector<std::pair<std::string, int>> ChunkCounts(const std::string &path) {
  std::ifstream in = OpenInput(path);
  std::vector<std::pair<std::string, int>> out;
  std::set<std::string> seen;
  ForEachJsonLine(in, path, [&](int, const nlohmann::json &j) {
    std::string id;
    if (j.contains("id")) {
      id = j.at("id").get<std::string>();
    } else if (j.contains("source_id")) {
      id = j.at("source_id").get<std::string>();
    } else {
      throw DataError("line has neither \"id\" nor \"source_id\"");
    }
    if (!j.contains("chunks") || !j.at("chunks").is_array()) {
      throw DataError("line has no \"chunks\" array");
    }
    if (!seen.insert(id).second) throw DataError("duplicate id " + id);
    out.emplace_back(id, static_cast<int>(j.at("chunks").size()));
  });
  return out;
}

int RunReportChunkDiff(const ReportArgs &a) {
  if (a.inputs.size() != 2) throw DataError("report chunkdiff takes two files (A B)");
  const auto a_counts = ChunkCounts(a.inputs[0]);
  const auto b_counts = ChunkCounts(a.inputs[1]);
  std::map<std::string, int> b_by_id(b_counts.begin(), b_counts.end());
  if (b_by_id.size() != a_counts.size()) {
    throw DataError("inputs cover different sentences (" + std::to_string(a_counts.size()) +
                    " vs " + std::to_string(b_by_id.size()) + ")");
  }
  std::vector<int> va, vb;
  for (const auto &[id, count] : a_counts) {
    auto it = b_by_id.find(id);
    if (it == b_by_id.end()) throw DataError("id " + id + " missing from " + a.inputs[1]);
    va.push_back(count);
    vb.push_back(it->second);
  }
  const ChunkDiffHistogram h = ChunkCountDiff(va, vb);
  const std::filesystem::path dir = a.output_dir;
  EnsureDir(dir);
  WriteFileAtomic(dir / "chunkdiff.tsv", h.ToTsv());
  WriteFileAtomic(dir / "chunkdiff.svg",
                  h.ToSvg(a.title.empty() ? "chunk count difference (A - B)" : a.title));
  Say("sentences: " + std::to_string(h.n_sentences) + ", mean: " + Fixed(h.mean, 3) +
      ", median: " + Fixed(h.median, 1));
  std::cout << h.ToTsv() << std::flush;
  return 0;
}

int RunReportTable(const ReportArgs &a) {
  if (a.inputs.size() < 2) throw DataError("report table takes a base corpus and variants");
  const Corpus base = LoadAnyCorpus(a.inputs[0]);
  std::vector<Corpus> variants;
  for (size_t i = 1; i < a.inputs.size(); ++i) {
    Corpus v = LoadAnyCorpus(a.inputs[i]);
    v.name = std::filesystem::path(a.inputs[i]).stem().string();
    for (const auto &seen : variants) {
      if (seen.name == v.name) throw DataError("two variants named " + v.name);
    }
    variants.push_back(std::move(v));
  }
  SimilarityTable table = BuildSimilarityTable(base, variants, ParseBleuTokenize(a.tokenize));
  for (const auto &spec : a.neural) {
    const NeuralSpec n = ParseNeuralSpec(spec);
    table.AttachNeural(n.target, n.metric, ImportNeuralScores(n.path));
  }
  const std::filesystem::path dir = a.output_dir;
  EnsureDir(dir);
  WriteFileAtomic(dir / "similarity.tsv", table.ToTsv());
  WriteFileAtomic(dir / "similarity.txt", table.ToText());
  // Scorer input per variant; rows follow the variant's order.
  std::map<std::string, const SegmentPair *> base_by_id;
  for (const auto &p : base.pairs) base_by_id[p.id] = &p;
  for (const auto &v : variants) {
    std::vector<std::string> src, mt, ref;
    for (const auto &p : v.pairs) {
      const SegmentPair &b = *base_by_id.at(p.id);
      src.push_back(b.source_text);
      mt.push_back(*p.target_text);
      ref.push_back(*b.target_text);
    }
    ExportNeuralScoring(src, mt, ref, dir / (v.name + ".neural.jsonl"));
  }
  std::cout << table.ToText() << std::flush;
  return 0;
}

int RunReport(const ReportArgs &a) {
  if (a.kind == "curve") return RunReportCurve(a);
  if (a.kind == "chunkdiff") return RunReportChunkDiff(a);
  if (a.kind == "table") return RunReportTable(a);
  throw DataError("unknown report kind \"" + a.kind + "\"");
}

// ---- stats

struct StatsArgs {
  std::string input;
  bool records = false;
};

int RunStats(const StatsArgs &a) {
  if (a.records) {
    const auto records = LoadRecords(a.input);
    std::map<std::string, int64_t> codes;
    int64_t failed = 0;
    double cost = 0;
    for (const auto &r : records) {
      if (!r.validation.passed) ++failed;
      cost += r.cost_usd;
      for (const auto &v : r.validation.violations) {
        ++codes[std::string(ViolationCodeName(v.code))];
      }
    }
    Say("records: " + std::to_string(records.size()));
    Say("failing validation: " + std::to_string(failed));
    for (const auto &[code, count] : codes) Say("  " + code + ": " + std::to_string(count));
    Say("cost: " + Usd(cost));
    const MonotonicitySummary m = CorpusMonotonicity(records);
    Say("monotonicity mean: " + Fixed(m.mean, 4) + " over " + std::to_string(m.n_scored) +
        " records (" + std::to_string(m.n_skipped) + " without content)");
    std::cout << m.ToTsv() << std::flush;
    return 0;
  }
  const Corpus corpus = LoadAnyCorpus(a.input);
  const CorpusStats s = ComputeCorpusStats(corpus);
  Say("pairs: " + std::to_string(s.n_pairs));
  Say("source tokens: " + std::to_string(s.n_tokens_source));
  Say("mean source length: " + Fixed(s.mean_source_len, 2));
  for (const auto &[split, count] : s.split_counts) {
    Say("  " + std::string(SplitName(split)) + ": " + std::to_string(count));
  }
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"sitk: chunk-wise SI corpus construction and wait-k evaluation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "key = value config file");
  app.add_option("--parallelism", g.parallelism, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", g.cache_dir, "response cache directory")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for retry jitter");
  app.add_flag("-v,--verbose", g.verbose, "more logging (repeatable)");
  app.add_flag("-q,--quiet", g.quiet, "errors only");

  ChunkArgs chunk;
  auto *chunk_cmd = app.add_subcommand("chunk", "split source sentences into chunks");
  chunk_cmd->add_option("input", chunk.input, "corpus (.jsonl or .tsv)")->required();
  chunk_cmd->add_option("-o,--output", chunk.output, "output JSONL (default stdout)");
  chunk_cmd->add_flag("--no-r2", chunk.no_r2, "skip long-subject boundaries");
  chunk_cmd->add_option("--min-chunk-tokens", chunk.min_chunk_tokens)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ConvertArgs convert;
  auto *convert_cmd = app.add_subcommand("convert", "build SI records through a chat model");
  convert_cmd->add_option("input", convert.input, "corpus (.jsonl or .tsv)")->required();
  convert_cmd->add_option("-o,--output", convert.output, "records JSONL")->required();
  convert_cmd->add_option("--model", convert.model, "model config (default --config)");
  convert_cmd->add_option("--prompt", convert.prompt, "prompt template file");
  convert_cmd->add_flag("-y,--yes", convert.yes, "proceed above the cost threshold");
  convert_cmd->add_option("--confirm-above", convert.confirm_above,
                          "USD estimate that needs --yes (default 1.0)");

  ValidateArgs validate;
  auto *validate_cmd = app.add_subcommand("validate", "re-check SI records");
  validate_cmd->add_option("records", validate.records, "records JSONL")->required();
  validate_cmd->add_option("--corpus", validate.corpus, "source corpus")->required();
  validate_cmd->add_option("-o,--output", validate.output, "write re-validated records");
  validate_cmd->add_flag("--strict", validate.strict, "exit 2 if any record fails");

  SimulateArgs simulate;
  auto *simulate_cmd = app.add_subcommand("simulate", "wait-k sweep, latency and quality");
  simulate_cmd->add_option("--corpus", simulate.corpus);
  simulate_cmd->add_option("--output-dir", simulate.output_dir);
  simulate_cmd->add_option("--k-set", simulate.k_set, "e.g. 1,3,5 or 1:35:2");
  simulate_cmd->add_option("--agent", simulate.agent, "echo or an http(s) URL");
  simulate_cmd->add_option("--mode", simulate.mode, "text or speech");

  ReportArgs report;
  auto *report_cmd = app.add_subcommand("report", "CSV/SVG/TSV outputs");
  report_cmd->add_option("kind", report.kind, "curve | chunkdiff | table")
      ->required()
      ->check(CLI::IsMember({"curve", "chunkdiff", "table"}));
  report_cmd->add_option("inputs", report.inputs, "input files")->required();
  report_cmd->add_option("-o,--output-dir", report.output_dir)->capture_default_str();
  report_cmd->add_option("--neural", report.neural,
                         "TARGET:METRIC:FILE (k for curve, variant for table)");
  report_cmd->add_option("--title", report.title);
  report_cmd->add_option("--tokenize", report.tokenize)->capture_default_str();

  StatsArgs stats;
  auto *stats_cmd = app.add_subcommand("stats", "corpus or record statistics");
  stats_cmd->add_option("input", stats.input)->required();
  stats_cmd->add_flag("--records", stats.records, "input is SI records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  SetLogLevel(g.quiet ? LogLevel::kError
                      : g.verbose >= 2 ? LogLevel::kDebug
                      : g.verbose == 1 ? LogLevel::kInfo
                                       : LogLevel::kWarning);
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);

  try {
    if (*chunk_cmd) return RunChunk(chunk);
    if (*convert_cmd) return RunConvert(g, convert);
    if (*validate_cmd) return RunValidate(validate);
    if (*simulate_cmd) return RunSimulate(g, simulate);
    if (*report_cmd) return RunReport(report);
    if (*stats_cmd) return RunStats(stats);
  } catch (const UserAbort &e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 3;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ChatError &e) {
    std::cerr << "error: " << ChatErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const ConversionError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace sitk

int main(int argc, char **argv) { return sitk::Main(argc, argv); }

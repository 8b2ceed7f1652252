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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>

#include "httplib.h"
#include "mock_chat_server.h"
#include "si_fixture.h"
#include "sitk/io.h"
#include "sitk/report.h"
#include "test_util.h"

namespace sitk {
namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr
};

RunResult RunCli(const std::string &args) {
  const std::string cmd = std::string(SITK_BINARY) + " " + args + " 2>&1";
  RunResult r;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Q(const std::filesystem::path &p) { return "'" + p.string() + "'"; }

size_t Count(const std::string &text, const std::string &needle) {
  size_t n = 0;
  for (size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos; ++pos) ++n;
  return n;
}

void WriteModelConfig(const std::filesystem::path &path, const std::string &url, double price) {
  WriteFileAtomic(path, "model_id = mock-model\nendpoint_url = " + url +
                            "\nprice_per_sentence_usd = " + FormatDouble(price) +
                            "\nbackoff_base_ms = 1\nconfirm_above_usd = 1.0\n");
}

TEST(CliTest, ChunkOneSentence) {
  testing::TempDir dir;
  WriteFileAtomic(dir / "c.jsonl",
                  "{\"id\":\"a\",\"talk_id\":\"t\",\"split\":\"test\",\"source_text\":"
                  "\"Groups like Anonymous have risen in the past few years.\"}\n");
  const auto r = RunCli("chunk " + Q(dir / "c.jsonl") + " -o " + Q(dir / "out.jsonl"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(Count(ReadFile(dir / "out.jsonl"), "\n"), 1u);
}

TEST(CliTest, NoR2GivesCoarserChunks) {
  testing::TempDir dir;
  WriteFileAtomic(dir / "c.jsonl",
                  "{\"id\":\"a\",\"talk_id\":\"t\",\"split\":\"test\",\"source_text\":"
                  "\"The old man who lived next door for many years gave us some apples.\"}\n");
  ASSERT_EQ(RunCli("chunk " + Q(dir / "c.jsonl") + " -o " + Q(dir / "r2.jsonl")).code, 0);
  ASSERT_EQ(RunCli("chunk --no-r2 " + Q(dir / "c.jsonl") + " -o " + Q(dir / "no.jsonl")).code, 0);
  const auto with = nlohmann::json::parse(ReadFile(dir / "r2.jsonl"));
  const auto without = nlohmann::json::parse(ReadFile(dir / "no.jsonl"));
  EXPECT_LE(without.at("chunks").size(), with.at("chunks").size());
  for (const auto &c : without.at("chunks")) {
    for (const auto &rule : c.at("fired_rules")) EXPECT_NE(rule, "R2");
  }
}

TEST(CliTest, MissingFileIsIoError) {
  EXPECT_EQ(RunCli("chunk /nonexistent/corpus.jsonl").code, 1);
  EXPECT_EQ(RunCli("stats /nonexistent/corpus.jsonl").code, 1);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("frobnicate").code, 2);
  EXPECT_EQ(RunCli("report pie x").code, 2);
}

TEST(CliTest, ConvertAgainstMockEndpoint) {
  testing::TempDir dir;
  testing::MockChatServer server([](const std::string &sentence, int) {
    return testing::MockReply{200, testing::FakeReply(sentence)};
  });
  SaveCorpus(testing::SyntheticCorpus(10), dir / "c.jsonl");
  WriteModelConfig(dir / "model.cfg", server.url(), 0.0003);
  ::setenv("API_KEY", "test-key", 1);
  const std::string args = "--cache-dir " + Q(dir / "cache") + " --parallelism 3 convert " +
                           Q(dir / "c.jsonl") + " -o " + Q(dir / "out.jsonl") + " --model " +
                           Q(dir / "model.cfg");
  const auto first = RunCli(args);
  EXPECT_EQ(first.code, 0) << first.output;
  EXPECT_NE(first.output.find("estimated cost: $0.0030 for 10 uncached"), std::string::npos)
      << first.output;
  EXPECT_NE(first.output.find("0/10 cached"), std::string::npos);
  const auto records = LoadRecords(dir / "out.jsonl");
  ASSERT_EQ(records.size(), 10u);
  for (const auto &r : records) EXPECT_TRUE(r.validation.violations.empty()) << r.source_id;
  EXPECT_EQ(server.requests(), 10);

  const std::string before = ReadFile(dir / "out.jsonl");
  const auto second = RunCli(args);
  EXPECT_EQ(second.code, 0) << second.output;
  EXPECT_NE(second.output.find("10/10 cached"), std::string::npos) << second.output;
  EXPECT_EQ(server.requests(), 10);
  EXPECT_EQ(ReadFile(dir / "out.jsonl"), before);
}

TEST(CliTest, ConvertAboveThresholdNeedsYes) {
  testing::TempDir dir;
  testing::MockChatServer server([](const std::string &sentence, int) {
    return testing::MockReply{200, testing::FakeReply(sentence)};
  });
  SaveCorpus(testing::SyntheticCorpus(10), dir / "c.jsonl");
  WriteModelConfig(dir / "model.cfg", server.url(), 0.5);  // $5 > $1
  ::setenv("API_KEY", "test-key", 1);
  const std::string args = "--cache-dir " + Q(dir / "cache") + " convert " + Q(dir / "c.jsonl") +
                           " -o " + Q(dir / "out.jsonl") + " --model " + Q(dir / "model.cfg");
  const auto refused = RunCli(args);
  EXPECT_EQ(refused.code, 3) << refused.output;
  EXPECT_EQ(server.requests(), 0);
  EXPECT_FALSE(std::filesystem::exists(dir / "out.jsonl"));
  const auto accepted = RunCli(args + " --yes");
  EXPECT_EQ(accepted.code, 0) << accepted.output;
  EXPECT_EQ(server.requests(), 10);
}

TEST(CliTest, ConvertRejectsUnknownModelKey) {
  testing::TempDir dir;
  SaveCorpus(testing::SyntheticCorpus(2), dir / "c.jsonl");
  WriteFileAtomic(dir / "model.cfg", "model_id = m\nendpoint_url = http://127.0.0.1:1/\nmodle = x\n");
  EXPECT_EQ(RunCli("convert " + Q(dir / "c.jsonl") + " -o " + Q(dir / "o.jsonl") + " --model " +
                Q(dir / "model.cfg"))
                .code,
            2);
}

TEST(CliTest, ValidateCountsPlantedViolations) {
  testing::TempDir dir;
  testing::MockChatServer server([](const std::string &sentence, int) {
    const bool broken = sentence.find("day 2,") != std::string::npos;
    return testing::MockReply{200, testing::FakeReply(sentence, broken)};
  });
  SaveCorpus(testing::SyntheticCorpus(4), dir / "c.jsonl");
  WriteModelConfig(dir / "model.cfg", server.url(), 0);
  ::setenv("API_KEY", "test-key", 1);
  ASSERT_EQ(RunCli("--cache-dir " + Q(dir / "cache") + " convert " + Q(dir / "c.jsonl") + " -o " +
                Q(dir / "r.jsonl") + " --model " + Q(dir / "model.cfg"))
                .code,
            0);
  const auto r = RunCli("validate " + Q(dir / "r.jsonl") + " --corpus " + Q(dir / "c.jsonl"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("ORDER_BROKEN: 1"), std::string::npos) << r.output;
  EXPECT_EQ(RunCli("validate --strict " + Q(dir / "r.jsonl") + " --corpus " + Q(dir / "c.jsonl")).code,
            2);
  const auto stats = RunCli("stats --records " + Q(dir / "r.jsonl"));
  EXPECT_EQ(stats.code, 0) << stats.output;
  EXPECT_NE(stats.output.find("monotonicity mean: 0."), std::string::npos) << stats.output;
}

// Scripted agent over HTTP: one token per source token, never ahead of the
// source read so far.
class ScriptedAgentServer {
 public:
  ScriptedAgentServer() {
    server_.Post("/agent", [](const httplib::Request &req, httplib::Response &res) {
      const auto q = nlohmann::json::parse(req.body);
      const size_t read = q.at("source_prefix").size();
      const size_t written = q.at("target_prefix").size();
      const nlohmann::json reply = written < read
                                       ? nlohmann::json{{"token", "t" + std::to_string(written)}}
                                       : nlohmann::json{{"end", true}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~ScriptedAgentServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/agent"; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST(CliTest, SimulateWithRemoteScriptedAgent) {
  testing::TempDir dir;
  ScriptedAgentServer agent;
  WriteFileAtomic(dir / "c.jsonl",
                  "{\"id\":\"a\",\"talk_id\":\"t\",\"split\":\"test\",\"source_text\":"
                  "\"one two three four five six\",\"target_text\":\"t0 t1 t2 t3 t4 t5\"}\n");
  WriteFileAtomic(dir / "run.cfg", "k_set = 1,2,3,6\ntokenize = whitespace\nagent = " +
                                       agent.url() + "\ncorpus = " + (dir / "c.jsonl").string() +
                                       "\noutput_dir = " + (dir / "out").string() + "\n");
  const auto r = RunCli("--config " + Q(dir / "run.cfg") + " simulate");
  EXPECT_EQ(r.code, 0) << r.output;
  const auto points = LoadCurvePoints(dir / "out" / "points.jsonl");
  ASSERT_EQ(points.size(), 4u);
  // |x| = |y| = 6, wait-k: AL == k exactly.
  for (const auto &p : points) {
    EXPECT_EQ(p.al, static_cast<double>(p.k));
    EXPECT_EQ(p.bleu, 100.0);
  }
}

TEST(CliTest, SimulateDefaultSweepAndEmptyCorpus) {
  testing::TempDir dir;
  SaveCorpus(testing::SyntheticCorpus(3), dir / "c.jsonl");
  const auto r = RunCli("simulate --corpus " + Q(dir / "c.jsonl") + " --output-dir " + Q(dir / "o"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(LoadCurvePoints(dir / "o" / "points.jsonl").size(), 18u);
  EXPECT_EQ(Count(ReadFile(dir / "o" / "curve.csv"), "\n"), 19u);

  WriteFileAtomic(dir / "empty.jsonl", "");
  EXPECT_EQ(RunCli("simulate --corpus " + Q(dir / "empty.jsonl") + " --output-dir " + Q(dir / "e"))
                .code,
            2);
  WriteFileAtomic(dir / "bad.cfg", "k_sett = 1\n");
  EXPECT_EQ(RunCli("--config " + Q(dir / "bad.cfg") + " simulate --corpus " + Q(dir / "c.jsonl"))
                .code,
            2);
}

TEST(CliTest, ReportCurve) {
  testing::TempDir dir;
  std::vector<CurvePoint> points;
  for (int k = 1; k <= 35; k += 2) {
    CurvePoint p;
    p.k = k;
    p.al = k * 0.9;
    p.laal = k;
    p.atd = k * 1.1;
    p.bleu = 10 + k * 0.3;
    p.chrf = 20 + k * 0.2;
    points.push_back(p);
  }
  SaveCurvePoints(points, dir / "p.jsonl");
  WriteFileAtomic(dir / "comet_k1.jsonl", "{\"score\":0.5}\n{\"score\":0.7}\n");
  const auto r = RunCli("report curve " + Q(dir / "p.jsonl") + " -o " + Q(dir / "out") +
                     " --neural 1:comet:" + Q(dir / "comet_k1.jsonl"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(Count(ReadFile(dir / "out" / "bleu_al.svg"), "class=\"marker\""), 18u);
  EXPECT_EQ(ReadFile(dir / "out" / "curve.csv"), CurveCsv(points));
  EXPECT_DOUBLE_EQ(LoadCurvePoints(dir / "out" / "points.jsonl")[0].neural->at("comet"), 0.6);

  // Byte-identical on rerun.
  const std::string svg = ReadFile(dir / "out" / "chrf_atd.svg");
  ASSERT_EQ(RunCli("report curve " + Q(dir / "p.jsonl") + " -o " + Q(dir / "out2")).code, 0);
  EXPECT_EQ(ReadFile(dir / "out2" / "chrf_atd.svg"), svg);

  SaveCurvePoints({points[0]}, dir / "one.jsonl");
  EXPECT_EQ(RunCli("report curve " + Q(dir / "one.jsonl") + " -o " + Q(dir / "one")).code, 0);
  EXPECT_EQ(Count(ReadFile(dir / "one" / "bleu_laal.svg"), "class=\"marker\""), 1u);

  WriteFileAtomic(dir / "bad.jsonl", "{\"k\": 1, \"al\": \n");
  EXPECT_EQ(RunCli("report curve " + Q(dir / "bad.jsonl") + " -o " + Q(dir / "bad")).code, 2);
}

TEST(CliTest, ReportChunkDiffAndTable) {
  testing::TempDir dir;
  SaveCorpus(testing::SyntheticCorpus(6), dir / "c.jsonl");
  ASSERT_EQ(RunCli("chunk " + Q(dir / "c.jsonl") + " -o " + Q(dir / "a.jsonl")).code, 0);
  ASSERT_EQ(RunCli("chunk --no-r2 " + Q(dir / "c.jsonl") + " -o " + Q(dir / "b.jsonl")).code, 0);
  const auto d = RunCli("report chunkdiff " + Q(dir / "a.jsonl") + " " + Q(dir / "b.jsonl") +
                     " -o " + Q(dir / "cd"));
  EXPECT_EQ(d.code, 0) << d.output;
  EXPECT_NE(d.output.find("sentences: 6"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "cd" / "chunkdiff.svg"));

  const auto t = RunCli("report table " + Q(dir / "c.jsonl") + " " + Q(dir / "c.jsonl") + " -o " +
                     Q(dir / "tab"));
  EXPECT_EQ(t.code, 0) << t.output;
  EXPECT_NE(ReadFile(dir / "tab" / "similarity.tsv").find("\t100\t100\n"), std::string::npos);
  int exported = 0;
  for (const auto &e : std::filesystem::directory_iterator(dir / "tab")) {
    const std::string name = e.path().filename().string();
    if (name.size() > 13 && name.ends_with(".neural.jsonl")) {
      ++exported;
      EXPECT_EQ(Count(ReadFile(e.path()), "\"ref\""), 6u);
    }
  }
  EXPECT_EQ(exported, 1);
}

}  // namespace
}  // namespace sitk

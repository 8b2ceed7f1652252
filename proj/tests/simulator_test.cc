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

#include <random>

#include "httplib.h"
#include "sitk/simulator.h"
#include "test_util.h"

namespace sitk {
namespace {

std::vector<std::string> Tokens(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("t" + std::to_string(i));
  return out;
}

SourceUnits Text(int n, const std::string &id = "u") {
  std::string text;
  for (int i = 0; i < n; ++i) text += "w" + std::to_string(i) + " ";
  return TextUnits(id, text);
}

std::vector<ActionType> Types(const ReadWriteTrace &t) {
  std::vector<ActionType> out;
  for (const auto &a : t.actions) out.push_back(a.type);
  return out;
}

constexpr ActionType R = ActionType::kRead;
constexpr ActionType W = ActionType::kWrite;

TEST(SegmentSpeechTest, UnitCounts) {
  EXPECT_EQ(SegmentFrames(800, 10).total(), 5u);
  const SourceUnits s = SegmentFrames(801, 10);
  ASSERT_EQ(s.total(), 6u);
  EXPECT_EQ(s.units.back().frames, 1);
  EXPECT_DOUBLE_EQ(s.units.back().cost_ms, 10.0);
  EXPECT_DOUBLE_EQ(s.units.front().cost_ms, 1600.0);
  EXPECT_EQ(SegmentFrames(160, 10).total(), 1u);
  EXPECT_NO_THROW(s.Validate());
}

TEST(SegmentSpeechTest, FromSpeechRef) {
  SpeechRef ref;
  ref.audio_path = "a.wav";
  ref.duration_ms = 8010;  // 801 frames at 10 ms
  const SourceUnits s = SegmentSpeech(ref, 160, "utt");
  EXPECT_EQ(s.total(), 6u);
  EXPECT_EQ(s.utterance_id, "utt");
  EXPECT_DOUBLE_EQ(s.total_ms(), 8010.0);
}

TEST(SegmentSpeechTest, Errors) {
  SpeechRef ref;
  ref.duration_ms = 0;
  EXPECT_THROW(SegmentSpeech(ref), DataError);
  EXPECT_THROW(SegmentFrames(0, 10), DataError);
  EXPECT_THROW(SegmentFrames(100, 10, 0), DataError);
  SourceUnits bad = SegmentFrames(480, 10);
  bad.units[0].frames = 100;
  EXPECT_THROW(bad.Validate(), DataError);
}

TEST(RunWaitKTest, WaitOneAlternates) {
  ScriptedAgent agent(Tokens(4));
  const auto t = RunWaitK(agent, Text(4), 1);
  EXPECT_EQ(t.delays, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(Types(t), (std::vector<ActionType>{R, W, R, W, R, W, R, W}));
  EXPECT_FALSE(t.early_stop);
  EXPECT_FALSE(t.truncated);
  EXPECT_NO_THROW(t.Validate());
}

TEST(RunWaitKTest, SpeechWaitThree) {
  ScriptedAgent agent(Tokens(4));
  const auto t = RunWaitK(agent, SegmentFrames(800, 10), 3);
  EXPECT_EQ(t.delays, (std::vector<int>{3, 4, 5, 5}));
  EXPECT_EQ(t.mode, SourceMode::kSpeech);
  ASSERT_TRUE(t.source_total_ms);
  EXPECT_DOUBLE_EQ(*t.source_total_ms, 8000.0);
  EXPECT_EQ(t.unit_costs_ms.size(), 5u);
}

TEST(RunWaitKTest, LargeKIsOffline) {
  ScriptedAgent agent(Tokens(3));
  const auto t = RunWaitK(agent, Text(5), 9);
  EXPECT_EQ(t.delays, (std::vector<int>{5, 5, 5}));
  EXPECT_EQ(Types(t), (std::vector<ActionType>{R, R, R, R, R, W, W, W}));
}

TEST(RunWaitKTest, EarlyEndReadsTheRest) {
  ScriptedAgent agent(Tokens(1));
  const auto t = RunWaitK(agent, Text(5), 2);
  EXPECT_EQ(t.delays, (std::vector<int>{2}));
  EXPECT_TRUE(t.early_stop);
  EXPECT_EQ(Types(t), (std::vector<ActionType>{R, R, W, R, R, R}));
  EXPECT_NO_THROW(t.Validate());
}

TEST(RunWaitKTest, TruncationIsFlagged) {
  ScriptedAgent agent(Tokens(100));
  const auto t = RunWaitK(agent, Text(3), 1);
  EXPECT_EQ(DefaultMaxTargetLen(Text(3)), 32);
  EXPECT_EQ(t.target_tokens.size(), 32u);
  EXPECT_TRUE(t.truncated);
  ScriptedAgent exact(Tokens(5));
  const auto u = RunWaitK(exact, Text(3), 1, 5);
  EXPECT_EQ(u.target_tokens.size(), 5u);
  EXPECT_FALSE(u.truncated);
  ScriptedAgent more(Tokens(6));
  EXPECT_TRUE(RunWaitK(more, Text(3), 1, 5).truncated);
}

TEST(RunWaitKTest, AgentErrorCarriesPartialTrace) {
  class Failing : public Agent {
   public:
    std::optional<std::string> NextToken(const AgentQuery &q) override {
      if (q.target_prefix->size() == 2) throw std::runtime_error("boom");
      return "x";
    }
  } agent;
  try {
    RunWaitK(agent, Text(5), 1);
    FAIL();
  } catch (const AgentError &e) {
    EXPECT_EQ(e.partial().target_tokens.size(), 2u);
    EXPECT_EQ(e.partial().delays, (std::vector<int>{1, 2}));
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}

TEST(RunWaitKTest, BadArguments) {
  ScriptedAgent agent(Tokens(1));
  EXPECT_THROW(RunWaitK(agent, Text(2), 0), DataError);
  EXPECT_THROW(RunWaitK(agent, Text(2), 1, 0), DataError);
  SourceUnits empty;
  EXPECT_THROW(RunWaitK(agent, empty, 1), DataError);
}

TEST(RunWaitKTest, PrefixEchoNeverRunsAhead) {
  PrefixEchoAgent agent;
  for (int k = 1; k <= 6; ++k) {
    const auto t = RunWaitK(agent, TextUnits("e", "a b c d e"), k);
    EXPECT_EQ(t.target_tokens, (std::vector<std::string>{"a", "b", "c", "d", "e"}));
    for (size_t i = 0; i < t.delays.size(); ++i) {
      EXPECT_GE(t.delays[i], static_cast<int>(i) + 1);
    }
  }
}

// Properties over random scripted runs.
TEST(RunWaitKTest, RandomizedInvariants) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const int m = std::uniform_int_distribution<int>(0, 60)(rng);
    const int k1 = std::uniform_int_distribution<int>(1, 35)(rng);
    const int k2 = std::uniform_int_distribution<int>(k1, 36)(rng);
    ScriptedAgent a1(Tokens(m)), a2(Tokens(m));
    const auto t1 = RunWaitK(a1, Text(n), k1);
    const auto t2 = RunWaitK(a2, Text(n), k2);
    ASSERT_NO_THROW(t1.Validate());
    ASSERT_EQ(t1, RunWaitK(a1, Text(n), k1));  // reproducible
    if (!t1.delays.empty()) {
      EXPECT_EQ(t1.delays[0], std::min(k1, n));
    }
    for (size_t i = 0; i < std::min(static_cast<size_t>(std::min(k1, n)), t1.actions.size());
         ++i) {
      EXPECT_EQ(t1.actions[i].type, R);
    }
    EXPECT_LE(t1.target_tokens.size(), static_cast<size_t>(DefaultMaxTargetLen(Text(n))));
    const size_t shared = std::min(t1.delays.size(), t2.delays.size());
    for (size_t i = 0; i < shared; ++i) EXPECT_LE(t1.delays[i], t2.delays[i]);
  }
}

TEST(TraceTest, JsonRoundTrip) {
  testing::TempDir dir;
  ScriptedAgent a(Tokens(4)), b(Tokens(2));
  std::vector<ReadWriteTrace> traces = {RunWaitK(a, SegmentFrames(801, 10, 160, "s"), 3),
                                        RunWaitK(b, Text(6, "t"), 2)};
  SaveTraces(traces, dir / "traces.jsonl");
  EXPECT_EQ(LoadTraces(dir / "traces.jsonl"), traces);
  const auto j = ToJson(traces[1]);
  for (const char *key : {"k", "actions", "delays", "source_total_units", "source_total_ms",
                          "target_tokens"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(TraceTest, FromDelaysAndValidation) {
  const auto t = TraceFromDelays({2, 2, 3}, 4);
  EXPECT_EQ(Types(t), (std::vector<ActionType>{R, R, W, W, R, W, R}));
  EXPECT_THROW(TraceFromDelays({2, 1}, 4), DataError);
  EXPECT_THROW(TraceFromDelays({5}, 4), DataError);
  ReadWriteTrace broken = t;
  broken.target_tokens.pop_back();
  EXPECT_THROW(broken.Validate(), DataError);
}

TEST(SweepTest, DefaultKs) {
  const auto ks = DefaultKs();
  ASSERT_EQ(ks.size(), 18u);
  EXPECT_EQ(ks.front(), 1);
  EXPECT_EQ(ks.back(), 35);
  for (size_t i = 1; i < ks.size(); ++i) EXPECT_EQ(ks[i] - ks[i - 1], 2);
}

TEST(SweepTest, ShapeAndOrder) {
  std::vector<SourceUnits> utts;
  for (int i = 0; i < 10; ++i) utts.push_back(Text(3 + i, "u" + std::to_string(i)));
  AgentFactory echo = [](const SourceUnits &) { return std::make_unique<PrefixEchoAgent>(); };
  SweepOptions opts;
  opts.parallelism = 4;
  const auto result = SweepK(echo, utts, DefaultKs(), opts);
  EXPECT_EQ(result.traces.size(), 18u);
  EXPECT_EQ(result.trace_count(), 180u);
  EXPECT_TRUE(result.failures.empty());
  for (const auto &[k, traces] : result.traces) {
    for (size_t i = 0; i < traces.size(); ++i) {
      EXPECT_EQ(traces[i].utterance_id, utts[i].utterance_id);
      EXPECT_EQ(traces[i].k, k);
    }
  }
  const auto single = SweepK(echo, {utts[0]}, {1});
  EXPECT_EQ(single.trace_count(), 1u);
  EXPECT_THROW(SweepK(echo, utts, {}), DataError);
  EXPECT_THROW(SweepK(echo, utts, {3, 3}), DataError);
}

TEST(SweepTest, FailuresAreCollected) {
  std::vector<SourceUnits> utts = {Text(3, "ok"), Text(3, "bad")};
  AgentFactory factory = [](const SourceUnits &src) -> std::unique_ptr<Agent> {
    if (src.utterance_id == "bad") throw std::runtime_error("no model");
    return std::make_unique<PrefixEchoAgent>();
  };
  const auto result = SweepK(factory, utts, {1, 3});
  EXPECT_EQ(result.trace_count(), 2u);
  ASSERT_EQ(result.failures.size(), 2u);
  EXPECT_EQ(result.failures[0].utterance_id, "bad");
}

TEST(RemoteAgentTest, WireFormat) {
  httplib::Server server;
  std::vector<nlohmann::json> seen;
  std::mutex mu;
  server.Post("/agent", [&](const httplib::Request &req, httplib::Response &res) {
    const auto j = nlohmann::json::parse(req.body);
    std::lock_guard<std::mutex> lock(mu);
    seen.push_back(j);
    const size_t produced = j.at("target_prefix").size();
    if (produced >= 3) {
      res.set_content(R"({"end": true})", "application/json");
    } else {
      res.set_content(nlohmann::json{{"token", "tok" + std::to_string(produced)}}.dump(),
                      "application/json");
    }
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  RemoteAgent agent("http://127.0.0.1:" + std::to_string(port) + "/agent");
  const auto t = RunWaitK(agent, SegmentFrames(480, 10, 160, "sp"), 2);
  EXPECT_EQ(t.target_tokens, (std::vector<std::string>{"tok0", "tok1", "tok2"}));
  EXPECT_EQ(t.delays, (std::vector<int>{2, 3, 3}));
  server.stop();
  th.join();

  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[0].at("mode"), "speech");
  EXPECT_EQ(seen[0].at("utterance_id"), "sp");
  ASSERT_EQ(seen[0].at("source_prefix").size(), 2u);
  EXPECT_EQ(seen[0].at("source_prefix")[1].at("index"), 1);
  EXPECT_EQ(seen[0].at("source_prefix")[1].at("frames"), 160);
  EXPECT_EQ(seen[0].at("source_prefix")[1].at("end_ms"), 3200.0);
  EXPECT_EQ(seen[1].at("target_prefix"), nlohmann::json::array({"tok0"}));
}

TEST(RemoteAgentTest, TextPrefixIsTokens) {
  SourceUnits src = TextUnits("x", "hello big world");
  std::vector<std::string> target = {"a"};
  const auto j = RemoteAgent::RequestJson(AgentQuery{&src, 2, &target});
  EXPECT_EQ(j.at("source_prefix"), nlohmann::json::array({"hello", "big"}));
  EXPECT_EQ(j.at("mode"), "text");
}

}  // namespace
}  // namespace sitk

// Copyright 2026 The dqlab Authors.
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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/env.h"
#include "core/error.h"
#include "core/rng.h"
#include "doctest.h"
#include "eval/scores.h"
#include "eval/value_metrics.h"
#include "oracles.h"

namespace dqlab {
namespace {

using doctest::Approx;

const std::string kNoop = std::string(DQLAB_DATA_DIR) + "/scores_noop.csv";
const std::string kHumanStart =
    std::string(DQLAB_DATA_DIR) + "/scores_human_start.csv";

ErrorCode parse_code(const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    parse_score_table(in);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

EnvModel chain3() {
  EnvParams p;
  p.kind = EnvKind::kChain;
  p.actions = 2;
  p.gamma = 0.5;
  p.length = 3;
  return make_env(p);
}

// Linear network over one-hot features whose outputs are exactly `table`.
MlpParameters table_network(const ValueTable& table) {
  MlpParameters p({table.state_count(), table.action_count()});
  auto w = p.weights(0);
  for (int a = 0; a < table.action_count(); ++a) {
    for (int s = 0; s < table.state_count(); ++s) {
      w[a * table.state_count() + s] = table.at(s, a);
    }
  }
  return p;
}

TEST_CASE("value estimate metric examples") {
  MlpParameters p({2, 2});
  p.biases(0)[0] = 1.0;
  p.biases(0)[1] = 3.0;
  const std::vector<std::vector<double>> states{{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
  CHECK(value_estimate_metric(p, states) == 3.0);
  CHECK(value_estimate_metric(p, std::span(states).first(1)) == 3.0);
  p.biases(0)[0] += 0.25;
  p.biases(0)[1] += 0.25;
  CHECK(value_estimate_metric(p, states) == 3.25);
  CHECK_THROWS_AS(value_estimate_metric(p, std::vector<std::vector<double>>{}),
                  Error);
}

TEST_CASE("ground truth on the chain") {
  const EnvModel env = chain3();
  const MlpParameters p = table_network(true_optimal_values(env));
  Rng rng(1);
  const auto report = ground_truth_return(env, p, 5, 0.5, 0.0, rng, 100);
  CHECK(report.start_state_return == 1.75);
  CHECK(report.visited_states == 15);
  // Returns from states 0, 1, 2 are 1.75, 1.5 and 1.
  CHECK(report.mean_return == Approx((1.75 + 1.5 + 1.0) / 3.0));
  CHECK(report.truncated_episodes == 0);
  Rng other(99);
  CHECK(ground_truth_return(env, p, 5, 0.5, 0.0, other, 100).mean_return ==
        report.mean_return);
  CHECK(greedy_policy_return(env, p) == 1.75);
}

TEST_CASE("myopic ground truth averages immediate rewards") {
  EnvParams ep;
  ep.kind = EnvKind::kChain;
  ep.actions = 2;
  ep.gamma = 0.0;
  ep.length = 4;
  const EnvModel env = make_env(ep);
  const MlpParameters p = table_network(true_optimal_values(env));
  Rng rng(2);
  const auto report = ground_truth_return(env, p, 3, 0.0, 0.0, rng, 100);
  CHECK(report.mean_return == 1.0);
}

TEST_CASE("truncated episodes are counted") {
  const EnvModel env = chain3();
  const MlpParameters p = table_network(true_optimal_values(env));
  Rng rng(3);
  const auto report = ground_truth_return(env, p, 4, 0.5, 0.0, rng, 2);
  CHECK(report.truncated_episodes == 4);
  CHECK(report.start_state_return == 1.5);
}

TEST_CASE("uniform overestimation shifts the estimate only") {
  const EnvModel env = chain3();
  MlpParameters p = table_network(true_optimal_values(env));
  Rng a(4), b(4);
  const auto exact = evaluate_value_accuracy(env, p, 10, 0.5, 0.0, a, 100);
  for (double& v : p.biases(0)) v += 0.4;
  const auto shifted = evaluate_value_accuracy(env, p, 10, 0.5, 0.0, b, 100);
  CHECK(exact.value_estimate == Approx(exact.truth.mean_return));
  CHECK(shifted.value_estimate == Approx(exact.value_estimate + 0.4));
  CHECK(shifted.truth.mean_return == exact.truth.mean_return);
  CHECK(shifted.value_estimate >= shifted.truth.mean_return);
}

TEST_CASE("normalize score examples") {
  CHECK(100.0 * normalize_score(210.0, 8503.3, 6011.67) == Approx(69.96).epsilon(1e-4));
  CHECK(100.0 * normalize_score(11.5, 7845.0, 48377.0) == Approx(617.42).epsilon(1e-5));
  CHECK(normalize_score(3.0, 17.0, 17.0) == 1.0);
  CHECK(normalize_score(3.0, 17.0, 3.0) == 0.0);
  try {
    normalize_score(5.0, 5.0, 7.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
}

TEST_CASE("normalization is affine invariant") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(-100, 100), h = r + rng.uniform(1, 1000);
    const double x = rng.uniform(-2000, 2000);
    const double scale = rng.uniform(0.01, 100), shift = rng.uniform(-1e4, 1e4);
    CHECK(normalize_score(scale * r + shift, scale * h + shift, scale * x + shift) ==
          Approx(normalize_score(r, h, x)).epsilon(1e-9));
  }
}

TEST_CASE("summarize examples") {
  const ScoreSummary one = summarize(std::vector<double>{0.5});
  CHECK(one.median == 0.5);
  CHECK(one.mean == 0.5);
  const ScoreSummary even = summarize(std::vector<double>{4.0, 1.0, 3.0, 2.0});
  CHECK(even.median == 2.5);
  CHECK(even.mean == 2.5);
  CHECK(summarize(std::vector<double>{5.0, -1.0, 0.0}).median == 0.0);
  CHECK_THROWS_AS(summarize(std::vector<double>{}), Error);
}

TEST_CASE("shipped tables load") {
  const ScoreTable noop = load_score_table(kNoop);
  CHECK(noop.records.size() == 49);
  CHECK(noop.agent_names == std::vector<std::string>{"dqn", "double_dqn"});

  const ScoreTable hs = load_score_table(kHumanStart);
  CHECK(hs.records.size() == 57);
  const std::size_t dqn = *hs.agent_index("dqn");
  std::set<std::string> absent;
  for (const auto& r : hs.records) {
    if (!r.agents[dqn]) absent.insert(r.game);
    for (std::size_t a = 0; a < hs.agent_names.size(); ++a) {
      if (a != dqn) CHECK(r.agents[a].has_value());
    }
  }
  CHECK(absent == std::set<std::string>{"Berzerk", "Defender", "Phoenix",
                                        "Pit Fall", "Skiing", "Solaris",
                                        "Surround", "Yars Revenge"});
  CHECK(normalized_column(hs, dqn).size() == 49);
  CHECK_FALSE(hs.agent_index("nobody").has_value());
  CHECK_THROWS_AS(load_score_table("/nonexistent/table.csv"), Error);
}

TEST_CASE("malformed tables report the line") {
  CHECK(parse_code("") == ErrorCode::kParse);
  CHECK(parse_code("game,random,human,dqn\n") == ErrorCode::kParse);
  CHECK(parse_code("name,random,human,dqn\nA,1,2,3\n") == ErrorCode::kParse);
  std::string msg;
  CHECK(parse_code("game,random,human,dqn\nA,1,2,3\nB,1,x,3\n", &msg) ==
        ErrorCode::kParse);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(parse_code("game,random,human,dqn\nA,1,2,3\nB,1,2\n", &msg) ==
        ErrorCode::kParse);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(parse_code("game,random,human,dqn\nA,1,2,3\nA,1,2,3\n") == ErrorCode::kParse);
  CHECK(parse_code("game,random,human,dqn\nA,2,2,3\n") == ErrorCode::kParse);
  CHECK(parse_code("game,random,human,dqn\nA,,2,3\n") == ErrorCode::kParse);
  std::istringstream ok("game,random,human,dqn,ddqn\nA,1,2,,5\n");
  const ScoreTable t = parse_score_table(ok);
  CHECK_FALSE(t.records[0].agents[0].has_value());
  CHECK(*t.records[0].agents[1] == 5.0);
}

void check_round_trip(const std::string& raw_path, const std::string& printed_path) {
  const ScoreTable raw = load_score_table(raw_path);
  const auto printed = oracle::read_printed_table(printed_path);
  REQUIRE(printed.agents == raw.agent_names);
  REQUIRE(printed.games.size() == raw.records.size());
  int compared = 0;
  for (std::size_t a = 0; a < raw.agent_names.size(); ++a) {
    const auto column = normalized_column(raw, a);
    CHECK(column.size() == printed.columns[a].size());
    for (const auto& e : column) {
      const auto it = printed.columns[a].find(e.game);
      REQUIRE(it != printed.columns[a].end());
      CHECK_MESSAGE(std::abs(100.0 * e.value - it->second) <= 0.05 + 1e-9,
                    e.game << " " << raw.agent_names[a]);
      ++compared;
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("no-op round trip") {
  check_round_trip(kNoop, std::string(DQLAB_TEST_DATA_DIR) + "/normalized_noop.csv");
}

TEST_CASE("human-start round trip") {
  check_round_trip(kHumanStart,
                   std::string(DQLAB_TEST_DATA_DIR) + "/normalized_human_start.csv");
}

TEST_CASE("table summaries") {
  auto summary = [](const ScoreTable& t, const std::string& agent,
                    const std::string& subset) {
    const std::size_t a = *t.agent_index(agent);
    const std::size_t s = *t.agent_index(subset);
    std::vector<double> v;
    for (const auto& r : t.records) {
      if (r.agents[a] && r.agents[s]) {
        v.push_back(100.0 * normalize_score(r.random, r.human, *r.agents[a]));
      }
    }
    return summarize(v);
  };
  const ScoreTable noop = load_score_table(kNoop);
  const ScoreSummary dqn = summary(noop, "dqn", "dqn");
  CHECK(dqn.count == 49);
  CHECK(std::abs(dqn.median - 93.5) <= 0.1);
  CHECK(std::abs(dqn.mean - 241.1) <= 0.1);
  const ScoreSummary ddqn = summary(noop, "double_dqn", "double_dqn");
  CHECK(std::abs(ddqn.median - 114.7) <= 0.1);
  CHECK(std::abs(ddqn.mean - 330.3) <= 0.1);

  const ScoreTable hs = load_score_table(kHumanStart);
  const ScoreSummary h1 = summary(hs, "dqn", "dqn");
  CHECK(h1.count == 49);
  CHECK(std::abs(h1.median - 47.5) <= 0.1);
  CHECK(std::abs(h1.mean - 122.0) <= 0.1);
  const ScoreSummary h2 = summary(hs, "double_dqn", "dqn");
  CHECK(std::abs(h2.median - 88.4) <= 0.1);
  CHECK(std::abs(h2.mean - 273.1) <= 0.1);
  const ScoreSummary h3 = summary(hs, "double_dqn_tuned", "dqn");
  CHECK(std::abs(h3.median - 116.7) <= 0.1);
  CHECK(std::abs(h3.mean - 475.2) <= 0.1);
}

}  // namespace
}  // namespace dqlab

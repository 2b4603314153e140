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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include "core/argmax.h"
#include "core/env.h"
#include "core/error.h"
#include "core/rng.h"
#include "deep_agent/deep_agent.h"
#include "deep_agent/replay_buffer.h"
#include "doctest.h"
#include "neural/checkpoint.h"

namespace dqlab {
namespace {

using doctest::Approx;

Transition item(int id) { return Transition{id, 0, 0.0, 0, false}; }

std::vector<double> random_vector(int n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

// E[clip(X, -1, 1)] for X ~ N(mu, sigma^2), by Simpson's rule.
double clipped_normal_mean(double mu, double sigma) {
  const int n = 20000;
  const double lo = mu - 12.0 * sigma, hi = mu + 12.0 * sigma;
  const double h = (hi - lo) / n;
  auto f = [&](double x) {
    const double z = (x - mu) / sigma;
    return std::clamp(x, -1.0, 1.0) * std::exp(-0.5 * z * z) /
           (sigma * std::sqrt(2.0 * std::numbers::pi));
  };
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

EnvModel noisy_terminal(std::vector<double> mu, double gamma, double sigma,
                        int lead_in = 0) {
  EnvParams p;
  p.kind = EnvKind::kNoisyTerminal;
  p.actions = static_cast<int>(mu.size());
  p.mu = std::move(mu);
  p.gamma = gamma;
  p.sigma = sigma;
  p.lead_in = lead_in;
  return make_env(p);
}

TEST_CASE("dqn target examples") {
  const std::vector<double> next{2.0, 3.0};
  CHECK(dqn_target(1.0, 0.99, next, false) == Approx(3.97));
  CHECK(dqn_target(1.0, 0.99, next, true) == 1.0);
  CHECK(dqn_target(1.0, 0.0, next, false) == 1.0);
}

TEST_CASE("double dqn target examples") {
  const std::vector<double> online{5.0, 1.0}, target{2.0, 3.0};
  CHECK(double_dqn_target(1.0, 0.99, online, target, false) == Approx(2.98));
  CHECK(double_dqn_target(1.0, 0.99, target, target, false) ==
        dqn_target(1.0, 0.99, target, false));
  CHECK(double_dqn_target(1.0, 0.99, online, target, true) == 1.0);
  try {
    double_dqn_target(1.0, 0.99, std::vector<double>{1.0}, target, false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShape);
  }
}

TEST_CASE("double dqn target never exceeds the dqn target") {
  Rng rng(1);
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform_int(8));
    const auto online = random_vector(m, rng);
    const auto target = random_vector(m, rng);
    const double r = rng.normal(), gamma = rng.uniform01();
    const double d = double_dqn_target(r, gamma, online, target, false);
    const double s = dqn_target(r, gamma, target, false);
    CHECK(d <= s);
    const bool attains = target[argmax_tiebreak(online)] == max_value(target);
    CHECK((d == s) == (attains || gamma == 0.0));
  }
}

TEST_CASE("replay is fifo") {
  ReplayBuffer buf(2);
  CHECK(buf.empty());
  buf.push(item(1));
  CHECK(buf.size() == 1);
  buf.push(item(2));
  buf.push(item(3));
  CHECK(buf.size() == 2);
  CHECK(buf.at(0).state == 2);
  CHECK(buf.at(1).state == 3);
  CHECK(buf.insertions() == 3);

  ReplayBuffer big(10000);
  for (int i = 0; i < 100000; ++i) big.push(item(i));
  CHECK(big.size() == 10000);
  CHECK(big.at(0).state == 90000);
  CHECK(big.at(9999).state == 99999);
  CHECK_THROWS_AS(ReplayBuffer(0), Error);
}

TEST_CASE("replay sampling") {
  Rng rng(2);
  ReplayBuffer empty(4);
  try {
    empty.sample(1, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }

  ReplayBuffer one(4);
  one.push(item(7));
  for (const auto& t : one.sample(3, rng)) CHECK(t.state == 7);

  ReplayBuffer ten(10);
  for (int i = 0; i < 10; ++i) ten.push(item(i));
  const int n = 1000000;
  std::vector<int> counts(10, 0);
  for (const auto& t : ten.sample(n, rng)) ++counts[t.state];
  const double sd = std::sqrt(n * 0.1 * 0.9);
  for (int c : counts) CHECK(std::abs(c - n * 0.1) < 3.0 * sd);

  Rng a(3), b(3);
  const auto sa = ten.sample(50, a), sb = ten.sample(50, b);
  for (int i = 0; i < 50; ++i) CHECK(sa[i].state == sb[i].state);
}

TEST_CASE("sync copies the online network exactly") {
  Rng rng(4);
  AgentNets nets;
  nets.online = init_weights({6, 16, 3}, false, rng);
  nets.target = MlpParameters({6, 16, 3});
  nets.steps_since_sync = 17;
  sync_target(nets);
  CHECK(nets.steps_since_sync == 0);
  CHECK(nets.target == nets.online);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vector(6, rng);
    CHECK(forward(nets.online, x) == forward(nets.target, x));
    const auto q = forward(nets.target, x);
    CHECK(double_dqn_target(0.3, 0.99, forward(nets.online, x), q, false) ==
          dqn_target(0.3, 0.99, q, false));
  }
  const MlpParameters frozen = nets.target;
  for (double& v : nets.online.flat()) v += 0.1;
  CHECK(nets.target == frozen);
}

TEST_CASE("epsilon schedule") {
  CHECK(linear_epsilon(1.0, 0.1, 1000, 0) == 1.0);
  CHECK(linear_epsilon(1.0, 0.1, 1000, 500) == Approx(0.55));
  CHECK(linear_epsilon(1.0, 0.1, 1000, 1000) == 0.1);
  CHECK(linear_epsilon(1.0, 0.1, 1000, 5000) == 0.1);
  CHECK(linear_epsilon(1.0, 0.1, 0, 0) == 0.1);
}

TEST_CASE("presets and validation") {
  const AgentConfig atari = atari_agent_config();
  CHECK(atari.gamma == 0.99);
  CHECK(atari.learning_rate == 0.00025);
  CHECK(atari.target_sync_period == 10000);
  CHECK(atari.minibatch_size == 32);
  CHECK(atari.update_every == 4);
  CHECK(atari.epsilon_end == 0.1);
  CHECK(atari.eval_epsilon == 0.05);
  const AgentConfig tuned = tuned_agent_config();
  CHECK(tuned.target_sync_period == 30000);
  CHECK(tuned.epsilon_end == 0.01);
  CHECK(tuned.eval_epsilon == 0.001);
  CHECK(tuned.shared_output_bias);
  validate(desk_agent_config());

  AgentConfig bad = desk_agent_config();
  bad.target_sync_period = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = desk_agent_config();
  bad.minibatch_size = bad.replay_capacity + 1;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = desk_agent_config();
  bad.eval_epsilon = -0.1;
  CHECK_THROWS_AS(validate(bad), Error);
  CHECK(parse_deep_algo("ddqn") == DeepAlgo::kDoubleDqn);
  CHECK_FALSE(parse_deep_algo("sarsa").has_value());
}

TEST_CASE("loss treats the target network as a constant") {
  const EnvModel env = noisy_terminal({0.0, 0.0, 0.0}, 0.9, 1.0, 2);
  Rng rng(5);
  AgentNets nets;
  nets.online = init_weights({env.feature_count(), 8, 3}, false, rng);
  sync_target(nets);
  std::vector<Transition> batch;
  for (int i = 0; i < 16; ++i) {
    batch.push_back(Transition{static_cast<int>(rng.uniform_int(2)),
                               static_cast<int>(rng.uniform_int(3)),
                               rng.normal(), 1 + static_cast<int>(rng.uniform_int(2)),
                               false});
  }
  MlpGradients g1(std::vector<int>{env.feature_count(), 8, 3});
  MlpGradients g2 = g1;
  // Right after a sync both algorithms see identical targets.
  const double l1 = minibatch_loss_and_gradient(nets, env, batch, 0.9,
                                                DeepAlgo::kDqn, false, g1);
  const double l2 = minibatch_loss_and_gradient(nets, env, batch, 0.9,
                                                DeepAlgo::kDoubleDqn, false, g2);
  CHECK(l1 == l2);
  CHECK(g1 == g2);

  // Moving the target network changes the loss but the gradient stays shaped
  // like the online network and the target itself is untouched.
  AgentNets moved = nets;
  for (double& v : moved.target.flat()) v += 0.05;
  const MlpParameters target_before = moved.target;
  MlpGradients g3 = g1;
  const double l3 = minibatch_loss_and_gradient(moved, env, batch, 0.9,
                                                DeepAlgo::kDqn, false, g3);
  CHECK(l3 != l1);
  CHECK(moved.target == target_before);
  CHECK(g3.same_shape(moved.online));
}

TEST_CASE("loss gradient matches finite differences") {
  const EnvModel env = noisy_terminal({0.0, 0.0}, 0.9, 1.0, 1);
  Rng rng(6);
  AgentNets nets;
  nets.online = init_weights({env.feature_count(), 5, 2}, false, rng);
  nets.target = init_weights({env.feature_count(), 5, 2}, false, rng);
  const std::vector<Transition> batch{{0, 1, 0.5, 1, false},
                                      {1, 0, -0.3, 1, true},
                                      {0, 0, 1.0, 1, false}};
  MlpGradients g(std::vector<int>{env.feature_count(), 5, 2});
  minibatch_loss_and_gradient(nets, env, batch, 0.9, DeepAlgo::kDoubleDqn,
                              false, g);
  // Only the online network's Q(s, a) is perturbed; targets stay fixed, so
  // perturb a copy and recompute the loss with the original target values.
  const double h = 1e-6;
  for (std::size_t i = 0; i < g.parameter_count(); ++i) {
    auto loss_at = [&](double delta) {
      AgentNets p = nets;
      p.online.flat()[i] += delta;
      double loss = 0.0;
      for (const auto& t : batch) {
        double y = t.reward;
        if (!t.terminal) {
          const auto next = env.features(t.next_state);
          y = double_dqn_target(t.reward, 0.9, forward(nets.online, next),
                                forward(nets.target, next), false);
        }
        const double e = forward(p.online, env.features(t.state))[t.action] - y;
        loss += e * e / batch.size();
      }
      return loss;
    };
    const double fd = (loss_at(h) - loss_at(-h)) / (2.0 * h);
    CHECK(g.flat()[i] == Approx(fd).epsilon(1e-5).scale(1e-6));
  }
}

TEST_CASE("myopic agent learns the clipped mean reward") {
  const std::vector<double> mu{0.5, -0.3, 0.9};
  const EnvModel env = noisy_terminal(mu, 0.0, 0.5);
  AgentConfig cfg = desk_agent_config();
  cfg.gamma = 0.0;
  cfg.learning_rate = 0.00025;
  cfg.epsilon_start = cfg.epsilon_end = 1.0;
  cfg.eval_interval = 40000;
  cfg.eval_steps = 10;
  const DeepRun run = train_deep(env, DeepAlgo::kDqn, cfg, 40000, 1);
  const auto q = forward(run.nets.online, env.features(env.initial_state()));
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(q[a] - clipped_normal_mean(mu[a], 0.5)) < 0.05);
  }
}

TEST_CASE("training is reproducible and writes checkpoints") {
  const EnvModel env = noisy_terminal({0.0, 0.0, 0.0, 0.0}, 0.99, 1.0, 1);
  const auto dir = std::filesystem::temp_directory_path() / "dqlab_deep_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  AgentConfig cfg = desk_agent_config();
  cfg.eval_interval = 1000;
  cfg.eval_steps = 50;
  cfg.checkpoint_dir = dir.string();
  cfg.checkpoint_every = 1500;
  const DeepRun a = train_deep(env, DeepAlgo::kDoubleDqn, cfg, 3000, 9);
  cfg.checkpoint_dir.clear();
  const DeepRun b = train_deep(env, DeepAlgo::kDoubleDqn, cfg, 3000, 9);
  CHECK(a.nets.online == b.nets.online);
  REQUIRE(a.trace.size() == 3);
  REQUIRE(b.trace.size() == 3);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].step == 1000 * static_cast<std::int64_t>(i + 1));
    CHECK(a.trace[i].value_estimate == b.trace[i].value_estimate);
  }
  // Updates start once the buffer holds replay_start transitions.
  CHECK(a.updates == (3000 - 1000) / 4 + 1);
  REQUIRE(a.checkpoints.size() == 3);
  CHECK(load_checkpoint(a.checkpoints.back()) == a.nets.online);
  CHECK(std::filesystem::exists(dir / "checkpoint_step_1500.bin"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("non-finite loss aborts with a diagnostic checkpoint") {
  const EnvModel env = noisy_terminal({1e200, 1e200}, 0.99, 0.0);
  const auto dir = std::filesystem::temp_directory_path() / "dqlab_deep_diag";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  AgentConfig cfg = desk_agent_config();
  cfg.clip_rewards = false;
  cfg.replay_start = 32;
  cfg.checkpoint_dir = dir.string();
  try {
    train_deep(env, DeepAlgo::kDqn, cfg, 200, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumeric);
  }
  CHECK(std::filesystem::exists(dir / "diagnostic_step_32.bin"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("gamma must match the environment") {
  const EnvModel env = noisy_terminal({0.0, 0.0}, 0.5, 1.0);
  CHECK_THROWS_AS(train_deep(env, DeepAlgo::kDqn, desk_agent_config(), 10, 1),
                  Error);
}

}  // namespace
}  // namespace dqlab

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

#include "deep_agent/deep_agent.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "core/argmax.h"
#include "core/error.h"
#include "eval/value_metrics.h"
#include "neural/checkpoint.h"
#include "neural/rmsprop.h"
#include "tabular/tabular.h"

namespace dqlab {
namespace {

std::string checkpoint_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

std::optional<DeepAlgo> parse_deep_algo(const std::string& name) {
  if (name == "dqn") return DeepAlgo::kDqn;
  if (name == "ddqn" || name == "double-dqn") return DeepAlgo::kDoubleDqn;
  return std::nullopt;
}

std::string deep_algo_name(DeepAlgo algo) {
  return algo == DeepAlgo::kDqn ? "dqn" : "ddqn";
}

AgentConfig atari_agent_config() { return AgentConfig{}; }

AgentConfig tuned_agent_config() {
  AgentConfig cfg;
  cfg.target_sync_period = 30000;
  cfg.epsilon_end = 0.01;
  cfg.eval_epsilon = 0.001;
  cfg.shared_output_bias = true;
  return cfg;
}

AgentConfig desk_agent_config() {
  AgentConfig cfg;
  cfg.learning_rate = 0.001;
  cfg.target_sync_period = 1000;
  cfg.replay_capacity = 10000;
  cfg.replay_start = 1000;
  cfg.epsilon_anneal_steps = 10000;
  cfg.eval_interval = 1000;
  cfg.eval_steps = 500;
  cfg.max_episode_steps = 1000;
  return cfg;
}

void validate(const AgentConfig& c) {
  auto require = [](bool ok, const char* what) {
    check(ok, ErrorCode::kInvalidConfig, std::string("agent config: ") + what);
  };
  require(c.gamma >= 0.0 && c.gamma <= 1.0, "gamma must lie in [0, 1]");
  require(c.learning_rate >= 0.0, "learning_rate must be non-negative");
  require(c.rmsprop_decay >= 0.0 && c.rmsprop_decay < 1.0,
          "rmsprop_decay must lie in [0, 1)");
  require(c.rmsprop_damping > 0.0, "rmsprop_damping must be positive");
  require(c.target_sync_period >= 1, "target_sync_period must be >= 1");
  require(c.replay_capacity >= 1, "replay_capacity must be >= 1");
  require(c.minibatch_size >= 1, "minibatch_size must be >= 1");
  require(c.minibatch_size <= c.replay_capacity,
          "minibatch_size must not exceed replay_capacity");
  require(c.update_every >= 1, "update_every must be >= 1");
  require(c.replay_start >= 1 && c.replay_start <= c.replay_capacity,
          "replay_start must lie in [1, replay_capacity]");
  for (double e : {c.epsilon_start, c.epsilon_end, c.eval_epsilon}) {
    require(e >= 0.0 && e <= 1.0, "epsilon values must lie in [0, 1]");
  }
  require(c.epsilon_anneal_steps >= 0, "epsilon_anneal_steps must be >= 0");
  for (int h : c.hidden_layers) require(h >= 1, "hidden layer sizes must be >= 1");
  require(c.eval_interval >= 1, "eval_interval must be >= 1");
  require(c.eval_steps >= 1, "eval_steps must be >= 1");
  require(c.max_episode_steps >= 1, "max_episode_steps must be >= 1");
  require(c.checkpoint_every >= 0, "checkpoint_every must be >= 0");
}

double linear_epsilon(double start, double end, std::int64_t anneal_steps,
                      std::int64_t step) {
  if (step >= anneal_steps) return end;
  return start + (end - start) * static_cast<double>(step) /
                     static_cast<double>(anneal_steps);
}

void sync_target(AgentNets& nets) {
  nets.target = nets.online;
  nets.steps_since_sync = 0;
}

double dqn_target(double reward, double gamma,
                  std::span<const double> target_next, bool terminal) {
  if (terminal) return reward;
  return reward + gamma * max_value(target_next);
}

double double_dqn_target(double reward, double gamma,
                         std::span<const double> online_next,
                         std::span<const double> target_next, bool terminal) {
  check(online_next.size() == target_next.size(), ErrorCode::kShape,
        "double_dqn_target: online and target value vectors differ in length");
  if (terminal) return reward;
  return reward + gamma * target_next[argmax_tiebreak(online_next)];
}

double minibatch_loss_and_gradient(const AgentNets& nets, const EnvModel& env,
                                   std::span<const Transition> batch,
                                   double gamma, DeepAlgo algo,
                                   bool clip_error, MlpGradients& grads) {
  check(!batch.empty(), ErrorCode::kPrecondition,
        "minibatch_loss_and_gradient: empty batch");
  grads.set_zero();
  const double scale = 1.0 / static_cast<double>(batch.size());
  std::vector<double> out_grad(nets.online.output_size(), 0.0);
  double loss = 0.0;
  for (const Transition& t : batch) {
    double y = t.reward;
    if (!t.terminal) {
      const auto next = env.features(t.next_state);
      const auto target_next = forward(nets.target, next);
      if (algo == DeepAlgo::kDqn) {
        y = dqn_target(t.reward, gamma, target_next, false);
      } else {
        y = double_dqn_target(t.reward, gamma, forward(nets.online, next),
                              target_next, false);
      }
    }
    const auto x = env.features(t.state);
    const double q = forward(nets.online, x)[t.action];
    const double error = q - y;
    loss += error * error * scale;
    const double g = clip_error ? std::clamp(error, -1.0, 1.0) : error;
    std::fill(out_grad.begin(), out_grad.end(), 0.0);
    out_grad[t.action] = 2.0 * g * scale;
    accumulate_backward(nets.online, x, out_grad, grads);
  }
  return loss;
}

DeepRun train_deep(const EnvModel& env, DeepAlgo algo, const AgentConfig& cfg,
                   std::int64_t total_steps, std::uint64_t seed) {
  validate(cfg);
  check(total_steps >= 1, ErrorCode::kInvalidConfig,
        "train_deep: total_steps must be >= 1");
  check(cfg.gamma == env.gamma(), ErrorCode::kInvalidConfig,
        "train_deep: agent gamma differs from the environment's");

  Rng env_rng = Rng::for_stream(seed, Stream::kEnvironment);
  Rng explore_rng = Rng::for_stream(seed, Stream::kExploration);
  Rng replay_rng = Rng::for_stream(seed, Stream::kReplay);
  Rng init_rng = Rng::for_stream(seed, Stream::kWeightInit);
  Rng eval_rng = Rng::for_stream(seed, Stream::kEvaluation);

  std::vector<int> sizes{env.feature_count()};
  sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
  sizes.push_back(env.action_count());

  DeepRun run;
  run.algo = algo;
  run.nets.online = init_weights(sizes, cfg.shared_output_bias, init_rng);
  sync_target(run.nets);
  OptimizerState opt = make_optimizer(run.nets.online, cfg.learning_rate,
                                      cfg.rmsprop_decay, cfg.rmsprop_damping);
  MlpGradients grads(sizes, cfg.shared_output_bias);
  ReplayBuffer buffer(cfg.replay_capacity);
  const QFunction online_q = network_q_function(run.nets.online, env);

  auto save = [&](const std::string& name) {
    const std::string path = checkpoint_path(cfg.checkpoint_dir, name);
    save_checkpoint(run.nets.online, path);
    run.checkpoints.push_back(path);
  };

  int state = env.initial_state();
  int episode_steps = 0;
  double loss_sum = 0.0;
  std::int64_t loss_count = 0;
  for (std::int64_t step = 0; step < total_steps; ++step) {
    const double epsilon = linear_epsilon(cfg.epsilon_start, cfg.epsilon_end,
                                          cfg.epsilon_anneal_steps, step);
    const int action = epsilon_greedy(online_q(state), epsilon, explore_rng);
    const StepResult r = env.step(state, action, env_rng);
    const double reward =
        cfg.clip_rewards ? std::clamp(r.reward, -1.0, 1.0) : r.reward;
    buffer.push(Transition{state, action, reward, r.next_state, r.terminal});
    ++episode_steps;
    if (r.terminal || episode_steps >= cfg.max_episode_steps) {
      state = env.initial_state();
      episode_steps = 0;
    } else {
      state = r.next_state;
    }

    if ((step + 1) % cfg.update_every == 0 &&
        buffer.size() >= cfg.replay_start) {
      const auto batch = buffer.sample(cfg.minibatch_size, replay_rng);
      const double loss = minibatch_loss_and_gradient(
          run.nets, env, batch, cfg.gamma, algo, cfg.clip_error, grads);
      if (!std::isfinite(loss)) {
        std::string where;
        if (!cfg.checkpoint_dir.empty()) {
          save("diagnostic_step_" + std::to_string(step + 1) + ".bin");
          where = "; diagnostic checkpoint " + run.checkpoints.back();
        }
        fail(ErrorCode::kNumeric, "train_deep: non-finite loss at step " +
                                      std::to_string(step + 1) + where);
      }
      rmsprop_step(run.nets.online, grads, opt);
      loss_sum += loss;
      ++loss_count;
      ++run.updates;
    }

    if (++run.nets.steps_since_sync >= cfg.target_sync_period) {
      sync_target(run.nets);
    }

    const std::int64_t done = step + 1;
    if (done % cfg.eval_interval == 0 || done == total_steps) {
      DeepTraceRow row;
      row.step = done;
      const auto visited =
          run_evaluation_phase(env, online_q, cfg.eval_steps, cfg.eval_epsilon,
                               eval_rng, cfg.max_episode_steps);
      row.value_estimate = value_estimate_metric(online_q, visited);
      row.greedy_return = greedy_policy_return(env, run.nets.online);
      row.epsilon = epsilon;
      row.loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count)
                                : std::numeric_limits<double>::quiet_NaN();
      row.start_value = max_value(online_q(env.initial_state()));
      run.trace.push_back(row);
      loss_sum = 0.0;
      loss_count = 0;
    }
    if (!cfg.checkpoint_dir.empty() && cfg.checkpoint_every > 0 &&
        done % cfg.checkpoint_every == 0) {
      save("checkpoint_step_" + std::to_string(done) + ".bin");
    }
  }

  run.start_value_estimate = max_value(online_q(env.initial_state()));
  run.greedy_return = greedy_policy_return(env, run.nets.online);
  if (!cfg.checkpoint_dir.empty()) save("checkpoint_final.bin");
  return run;
}

}  // namespace dqlab

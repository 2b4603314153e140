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

// DQN and Double DQN on the toy environments: experience replay, a target
// network synchronized every tau environment steps, and RMSProp updates on
// the squared error of the sampled action.

#ifndef DQLAB_DEEP_AGENT_DEEP_AGENT_H_
#define DQLAB_DEEP_AGENT_DEEP_AGENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/env.h"
#include "deep_agent/replay_buffer.h"
#include "neural/mlp.h"

namespace dqlab {

enum class DeepAlgo { kDqn, kDoubleDqn };

std::optional<DeepAlgo> parse_deep_algo(const std::string& name);
std::string deep_algo_name(DeepAlgo algo);

struct AgentConfig {
  double gamma = 0.99;
  double learning_rate = 0.00025;
  double rmsprop_decay = 0.95;
  double rmsprop_damping = 1e-8;
  std::int64_t target_sync_period = 10000;
  std::size_t replay_capacity = 1000000;
  std::size_t minibatch_size = 32;
  std::int64_t update_every = 4;
  // No updates until the buffer holds this many transitions.
  std::size_t replay_start = 32;
  double epsilon_start = 1.0;
  double epsilon_end = 0.1;
  std::int64_t epsilon_anneal_steps = 1000000;
  double eval_epsilon = 0.05;
  bool shared_output_bias = false;
  bool clip_rewards = true;
  // Clip the TD error to [-1, 1] in the gradient. Off unless asked for.
  bool clip_error = false;
  std::vector<int> hidden_layers = {64};
  std::int64_t eval_interval = 1000000;
  std::int64_t eval_steps = 125000;
  int max_episode_steps = 27000;
  // When non-empty: periodic and final checkpoints are written here, and a
  // diagnostic checkpoint if the loss becomes non-finite.
  std::string checkpoint_dir;
  std::int64_t checkpoint_every = 0;
};

// Atari-scale hyper-parameters.
AgentConfig atari_agent_config();
// Atari-scale values with the tuned changes: tau 30000, training epsilon end
// 0.01, evaluation epsilon 0.001, shared output bias.
AgentConfig tuned_agent_config();
// Scaled-down defaults for toy environments: replay 1e4, anneal 1e4 steps,
// tau 1e3, evaluation every 1e3 steps.
AgentConfig desk_agent_config();

void validate(const AgentConfig& cfg);

// Linear from start to end over anneal_steps, constant afterwards.
double linear_epsilon(double start, double end, std::int64_t anneal_steps,
                      std::int64_t step);

struct AgentNets {
  MlpParameters online;
  MlpParameters target;
  std::int64_t steps_since_sync = 0;
};

// target := online (bitwise), counter reset.
void sync_target(AgentNets& nets);

// r + gamma max_a target_next[a], or r when terminal.
double dqn_target(double reward, double gamma,
                  std::span<const double> target_next, bool terminal);

// r + gamma target_next[argmax online_next], or r when terminal.
double double_dqn_target(double reward, double gamma,
                         std::span<const double> online_next,
                         std::span<const double> target_next, bool terminal);

// Mean over the batch of (Q(s, a; online) - y)^2 with y computed from the
// target network (and the online network for action selection in Double
// DQN). Writes d loss / d online into `grads`; the target network only
// enters through the constant y.
double minibatch_loss_and_gradient(const AgentNets& nets, const EnvModel& env,
                                   std::span<const Transition> batch,
                                   double gamma, DeepAlgo algo,
                                   bool clip_error, MlpGradients& grads);

struct DeepTraceRow {
  std::int64_t step = 0;
  // value_estimate_metric over an evaluation phase of eval_steps steps.
  double value_estimate = 0.0;
  // Exact discounted return of the greedy policy from the start state.
  double greedy_return = 0.0;
  double epsilon = 0.0;
  // Mean minibatch loss since the previous row (NaN before the first update).
  double loss = 0.0;
  // max_a Q(s0, a; online).
  double start_value = 0.0;
};

struct DeepRun {
  DeepAlgo algo = DeepAlgo::kDqn;
  std::vector<DeepTraceRow> trace;
  AgentNets nets;
  double start_value_estimate = 0.0;
  double greedy_return = 0.0;
  std::int64_t updates = 0;
  std::vector<std::string> checkpoints;
};

DeepRun train_deep(const EnvModel& env, DeepAlgo algo, const AgentConfig& cfg,
                   std::int64_t total_steps, std::uint64_t seed);

}  // namespace dqlab

#endif  // DQLAB_DEEP_AGENT_DEEP_AGENT_H_

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

// Value estimates versus realized discounted returns.

#ifndef DQLAB_EVAL_VALUE_METRICS_H_
#define DQLAB_EVAL_VALUE_METRICS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/env.h"
#include "core/rng.h"
#include "neural/mlp.h"

namespace dqlab {

// Action values for a state id.
using QFunction = std::function<std::vector<double>(int state)>;

// Q-function of a network fed with the environment's state features.
QFunction network_q_function(const MlpParameters& params, const EnvModel& env);

// (1/T) sum_t max_a Q(S_t, a).
double value_estimate_metric(const MlpParameters& params,
                             std::span<const std::vector<double>> inputs);
double value_estimate_metric(const QFunction& q, std::span<const int> states);

// Runs `steps` epsilon-greedy steps from the start state (restarting after
// terminal or capped episodes) and returns the visited states.
std::vector<int> run_evaluation_phase(const EnvModel& env, const QFunction& q,
                                      std::int64_t steps, double epsilon,
                                      Rng& rng, int max_episode_steps);

struct GroundTruthReport {
  // Average over every visited state of the discounted return realized from
  // that state to the end of its episode.
  double mean_return = 0.0;
  // Same average restricted to the start state of each episode.
  double start_state_return = 0.0;
  std::int64_t visited_states = 0;
  int episodes = 0;
  // Episodes cut at max_episode_steps; their returns are partial sums.
  int truncated_episodes = 0;
  std::vector<int> visited;
};

GroundTruthReport ground_truth_return(const EnvModel& env, const QFunction& q,
                                      int episodes, double gamma,
                                      double epsilon, Rng& rng,
                                      int max_episode_steps);
GroundTruthReport ground_truth_return(const EnvModel& env,
                                      const MlpParameters& params,
                                      int episodes, double gamma,
                                      double epsilon, Rng& rng,
                                      int max_episode_steps);

struct ValueAccuracyReport {
  double value_estimate = 0.0;
  GroundTruthReport truth;
};

// Both measures on the same rollouts: the estimate averages max_a Q over the
// states the ground-truth episodes visited.
ValueAccuracyReport evaluate_value_accuracy(const EnvModel& env,
                                            const MlpParameters& params,
                                            int episodes, double gamma,
                                            double epsilon, Rng& rng,
                                            int max_episode_steps);

// Exact discounted return of the network's greedy policy from the start state.
double greedy_policy_return(const EnvModel& env, const MlpParameters& params);

}  // namespace dqlab

#endif  // DQLAB_EVAL_VALUE_METRICS_H_

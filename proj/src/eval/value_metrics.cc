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

#include "eval/value_metrics.h"

#include "core/argmax.h"
#include "core/error.h"
#include "tabular/tabular.h"

namespace dqlab {

QFunction network_q_function(const MlpParameters& params, const EnvModel& env) {
  return [&params, &env](int state) {
    return forward(params, env.features(state));
  };
}

double value_estimate_metric(const MlpParameters& params,
                             std::span<const std::vector<double>> inputs) {
  check(!inputs.empty(), ErrorCode::kPrecondition,
        "value_estimate_metric: need at least one state");
  double total = 0.0;
  for (const auto& x : inputs) total += max_value(forward(params, x));
  return total / static_cast<double>(inputs.size());
}

double value_estimate_metric(const QFunction& q, std::span<const int> states) {
  check(!states.empty(), ErrorCode::kPrecondition,
        "value_estimate_metric: need at least one state");
  double total = 0.0;
  for (int s : states) total += max_value(q(s));
  return total / static_cast<double>(states.size());
}

std::vector<int> run_evaluation_phase(const EnvModel& env, const QFunction& q,
                                      std::int64_t steps, double epsilon,
                                      Rng& rng, int max_episode_steps) {
  check(steps >= 1, ErrorCode::kPrecondition,
        "run_evaluation_phase: steps must be >= 1");
  std::vector<int> visited;
  visited.reserve(static_cast<std::size_t>(steps));
  int state = env.initial_state();
  int episode_steps = 0;
  for (std::int64_t t = 0; t < steps; ++t) {
    visited.push_back(state);
    const int action = epsilon_greedy(q(state), epsilon, rng);
    const StepResult r = env.step(state, action, rng);
    ++episode_steps;
    if (r.terminal || episode_steps >= max_episode_steps) {
      state = env.initial_state();
      episode_steps = 0;
    } else {
      state = r.next_state;
    }
  }
  return visited;
}

GroundTruthReport ground_truth_return(const EnvModel& env, const QFunction& q,
                                      int episodes, double gamma,
                                      double epsilon, Rng& rng,
                                      int max_episode_steps) {
  check(episodes >= 1, ErrorCode::kPrecondition,
        "ground_truth_return: episodes must be >= 1");
  check(max_episode_steps >= 1, ErrorCode::kInvalidConfig,
        "ground_truth_return: max_episode_steps must be >= 1");
  GroundTruthReport report;
  report.episodes = episodes;
  double return_sum = 0.0;
  double start_sum = 0.0;
  std::vector<int> states;
  std::vector<double> rewards;
  for (int e = 0; e < episodes; ++e) {
    states.clear();
    rewards.clear();
    int state = env.initial_state();
    bool terminated = false;
    for (int t = 0; t < max_episode_steps; ++t) {
      const int action = epsilon_greedy(q(state), epsilon, rng);
      const StepResult r = env.step(state, action, rng);
      states.push_back(state);
      rewards.push_back(r.reward);
      if (r.terminal) {
        terminated = true;
        break;
      }
      state = r.next_state;
    }
    if (!terminated) ++report.truncated_episodes;
    // Discounted returns G_t = r_t + gamma G_{t+1}, accumulated backwards.
    double g = 0.0;
    for (std::size_t i = rewards.size(); i-- > 0;) {
      g = rewards[i] + gamma * g;
      return_sum += g;
      if (i == 0) start_sum += g;
    }
    report.visited.insert(report.visited.end(), states.begin(), states.end());
  }
  report.visited_states = static_cast<std::int64_t>(report.visited.size());
  report.mean_return = return_sum / static_cast<double>(report.visited_states);
  report.start_state_return = start_sum / episodes;
  return report;
}

GroundTruthReport ground_truth_return(const EnvModel& env,
                                      const MlpParameters& params,
                                      int episodes, double gamma,
                                      double epsilon, Rng& rng,
                                      int max_episode_steps) {
  return ground_truth_return(env, network_q_function(params, env), episodes,
                             gamma, epsilon, rng, max_episode_steps);
}

ValueAccuracyReport evaluate_value_accuracy(const EnvModel& env,
                                            const MlpParameters& params,
                                            int episodes, double gamma,
                                            double epsilon, Rng& rng,
                                            int max_episode_steps) {
  const QFunction q = network_q_function(params, env);
  ValueAccuracyReport report;
  report.truth = ground_truth_return(env, q, episodes, gamma, epsilon, rng,
                                     max_episode_steps);
  report.value_estimate = value_estimate_metric(q, report.truth.visited);
  return report;
}

double greedy_policy_return(const EnvModel& env, const MlpParameters& params) {
  std::vector<int> policy(env.state_count());
  for (int s = 0; s < env.state_count(); ++s) {
    policy[s] = static_cast<int>(argmax_tiebreak(forward(params, env.features(s))));
  }
  return evaluate_policy(env, policy, env.initial_state());
}

}  // namespace dqlab

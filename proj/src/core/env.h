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

#ifndef DQLAB_CORE_ENV_H_
#define DQLAB_CORE_ENV_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/rng.h"

namespace dqlab {

// One branch of a transition law. Rewards are Gaussian around reward_mean;
// reward_stddev == 0 makes the branch deterministic.
struct Outcome {
  double probability = 1.0;
  int next_state = 0;
  double reward_mean = 0.0;
  double reward_stddev = 0.0;
  bool terminal = false;
};

struct Transition {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
  bool terminal = false;
};

// Per-action value estimates for a single state, optionally paired with the
// true state value they are trying to match.
struct ActionValueEstimate {
  std::vector<double> values;
  std::optional<double> true_value;
};

// Dense state x action matrix of reals.
class ValueTable {
 public:
  ValueTable() = default;
  ValueTable(int state_count, int action_count, double fill = 0.0);

  int state_count() const { return state_count_; }
  int action_count() const { return action_count_; }

  double& at(int state, int action) {
    return values_[index(state, action)];
  }
  double at(int state, int action) const {
    return values_[index(state, action)];
  }
  std::span<double> row(int state);
  std::span<const double> row(int state) const;
  std::span<const double> data() const { return values_; }
  std::span<double> data() { return values_; }

  bool operator==(const ValueTable&) const = default;

 private:
  std::size_t index(int state, int action) const;

  int state_count_ = 0;
  int action_count_ = 0;
  std::vector<double> values_;
};

struct StepResult {
  double reward = 0.0;
  int next_state = 0;
  bool terminal = false;
};

// Finite MDP with a known transition law. Immutable after construction.
class EnvModel {
 public:
  // outcomes[s * action_count + a] lists the branches of (s, a).
  EnvModel(int state_count, int action_count, double gamma, int initial_state,
           std::vector<std::vector<Outcome>> outcomes);

  int state_count() const { return state_count_; }
  int action_count() const { return action_count_; }
  double gamma() const { return gamma_; }
  int initial_state() const { return initial_state_; }

  std::span<const Outcome> outcomes(int state, int action) const;
  double expected_reward(int state, int action) const;
  bool is_deterministic() const;

  // Network input for a state: one-hot over states.
  int feature_count() const { return state_count_; }
  std::vector<double> features(int state) const;

  StepResult step(int state, int action, Rng& rng) const;

 private:
  int state_count_;
  int action_count_;
  double gamma_;
  int initial_state_;
  std::vector<std::vector<Outcome>> outcomes_;
};

enum class EnvKind { kNoisyTerminal, kChain, kNoisyChain };

std::optional<EnvKind> parse_env_kind(const std::string& name);
std::string env_kind_name(EnvKind kind);

struct EnvParams {
  EnvKind kind = EnvKind::kNoisyTerminal;
  int actions = 10;
  double gamma = 0.99;
  // noisy-terminal: per-action reward means (one value is broadcast; empty
  // means all zero) and the number of zero-reward lead-in states that precede
  // the noisy decision state.
  std::vector<double> mu;
  int lead_in = 0;
  // Reward noise; used by noisy-terminal and noisy-chain.
  double sigma = 1.0;
  // chain / noisy-chain.
  int length = 3;
  double step_reward = 1.0;
  double goal_reward = 0.0;
};

// Builds one of the toy environments.
//
// noisy-terminal: `lead_in` deterministic states (every action moves on with
//   reward 0) followed by a decision state where action a pays N(mu_a, sigma^2)
//   and ends the episode. With lead_in == 0 the decision state is the start.
// chain / noisy-chain: states 0..length-1. The last action (m - 1) moves
//   forward and pays step_reward (plus goal_reward on the final step, which
//   terminates); every other action ends the episode with reward 0. The noisy
//   variant adds N(0, sigma^2) to forward rewards.
EnvModel make_env(const EnvParams& params);

// Optimal action values by value iteration; the result is a Bellman fixed
// point to within 1e-10 in sup norm.
ValueTable true_optimal_values(const EnvModel& env);

// Exact expected discounted return of a deterministic policy from `state`
// (iterative policy evaluation on the known model).
double evaluate_policy(const EnvModel& env, std::span<const int> policy,
                       int state);

}  // namespace dqlab

#endif  // DQLAB_CORE_ENV_H_

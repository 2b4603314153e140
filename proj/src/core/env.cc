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

#include "core/env.h"

#include <algorithm>
#include <cmath>

#include "core/argmax.h"
#include "core/error.h"

namespace dqlab {
namespace {

constexpr int kMaxSweeps = 1000000;
constexpr double kSweepTolerance = 1e-13;

double backup(const EnvModel& env, std::span<const Outcome> branches,
              std::span<const double> state_values) {
  double q = 0.0;
  for (const Outcome& o : branches) {
    const double future = o.terminal ? 0.0 : state_values[o.next_state];
    q += o.probability * (o.reward_mean + env.gamma() * future);
  }
  return q;
}

}  // namespace

ValueTable::ValueTable(int state_count, int action_count, double fill)
    : state_count_(state_count), action_count_(action_count) {
  check(state_count > 0 && action_count > 0, ErrorCode::kShape,
        "ValueTable: dimensions must be positive");
  values_.assign(static_cast<std::size_t>(state_count) * action_count, fill);
}

std::size_t ValueTable::index(int state, int action) const {
  return static_cast<std::size_t>(state) * action_count_ + action;
}

std::span<double> ValueTable::row(int state) {
  return std::span<double>(values_).subspan(index(state, 0), action_count_);
}

std::span<const double> ValueTable::row(int state) const {
  return std::span<const double>(values_).subspan(index(state, 0),
                                                  action_count_);
}

EnvModel::EnvModel(int state_count, int action_count, double gamma,
                   int initial_state, std::vector<std::vector<Outcome>> outcomes)
    : state_count_(state_count),
      action_count_(action_count),
      gamma_(gamma),
      initial_state_(initial_state),
      outcomes_(std::move(outcomes)) {
  check(state_count > 0, ErrorCode::kInvalidConfig,
        "EnvModel: state_count must be positive");
  check(action_count > 0, ErrorCode::kInvalidConfig,
        "EnvModel: action_count must be positive");
  check(gamma >= 0.0 && gamma <= 1.0, ErrorCode::kInvalidConfig,
        "EnvModel: gamma must lie in [0, 1]");
  check(initial_state >= 0 && initial_state < state_count,
        ErrorCode::kInvalidConfig, "EnvModel: initial_state out of range");
  check(outcomes_.size() ==
            static_cast<std::size_t>(state_count) * action_count,
        ErrorCode::kInvalidConfig,
        "EnvModel: need one outcome list per (state, action)");
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    double total = 0.0;
    check(!outcomes_[i].empty(), ErrorCode::kInvalidConfig,
          "EnvModel: empty outcome list");
    for (const Outcome& o : outcomes_[i]) {
      check(o.probability >= 0.0, ErrorCode::kInvalidConfig,
            "EnvModel: negative probability");
      check(std::isfinite(o.reward_mean) && o.reward_stddev >= 0.0,
            ErrorCode::kInvalidConfig, "EnvModel: invalid reward law");
      check(o.terminal || (o.next_state >= 0 && o.next_state < state_count),
            ErrorCode::kInvalidConfig, "EnvModel: next_state out of range");
      total += o.probability;
    }
    check(std::abs(total - 1.0) <= 1e-12, ErrorCode::kInvalidConfig,
          "EnvModel: transition probabilities must sum to 1");
  }
}

std::span<const Outcome> EnvModel::outcomes(int state, int action) const {
  check(state >= 0 && state < state_count_ && action >= 0 &&
            action < action_count_,
        ErrorCode::kInvalidInput, "EnvModel: state or action out of range");
  return outcomes_[static_cast<std::size_t>(state) * action_count_ + action];
}

double EnvModel::expected_reward(int state, int action) const {
  double r = 0.0;
  for (const Outcome& o : outcomes(state, action)) {
    r += o.probability * o.reward_mean;
  }
  return r;
}

bool EnvModel::is_deterministic() const {
  return std::all_of(outcomes_.begin(), outcomes_.end(), [](const auto& v) {
    return v.size() == 1 && v.front().reward_stddev == 0.0;
  });
}

std::vector<double> EnvModel::features(int state) const {
  check(state >= 0 && state < state_count_, ErrorCode::kInvalidInput,
        "EnvModel: state out of range");
  std::vector<double> x(state_count_, 0.0);
  x[state] = 1.0;
  return x;
}

StepResult EnvModel::step(int state, int action, Rng& rng) const {
  const auto branches = outcomes(state, action);
  const Outcome* chosen = &branches.back();
  if (branches.size() > 1) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (const Outcome& o : branches) {
      cumulative += o.probability;
      if (u < cumulative) {
        chosen = &o;
        break;
      }
    }
  }
  StepResult result;
  result.reward = chosen->reward_mean;
  if (chosen->reward_stddev > 0.0) {
    result.reward += chosen->reward_stddev * rng.normal();
  }
  result.terminal = chosen->terminal;
  result.next_state = chosen->terminal ? state : chosen->next_state;
  return result;
}

std::optional<EnvKind> parse_env_kind(const std::string& name) {
  if (name == "noisy-terminal") return EnvKind::kNoisyTerminal;
  if (name == "chain") return EnvKind::kChain;
  if (name == "noisy-chain") return EnvKind::kNoisyChain;
  return std::nullopt;
}

std::string env_kind_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::kNoisyTerminal:
      return "noisy-terminal";
    case EnvKind::kChain:
      return "chain";
    case EnvKind::kNoisyChain:
      return "noisy-chain";
  }
  return "unknown";
}

EnvModel make_env(const EnvParams& p) {
  check(p.actions >= 1, ErrorCode::kInvalidConfig,
        "make_env: action count must be positive");
  check(p.sigma >= 0.0, ErrorCode::kInvalidConfig,
        "make_env: sigma must be non-negative");
  check(p.gamma >= 0.0 && p.gamma <= 1.0, ErrorCode::kInvalidConfig,
        "make_env: gamma must lie in [0, 1]");
  const int m = p.actions;

  if (p.kind == EnvKind::kNoisyTerminal) {
    check(p.lead_in >= 0, ErrorCode::kInvalidConfig,
          "make_env: lead_in must be non-negative");
    std::vector<double> mu(m, 0.0);
    if (p.mu.size() == 1) {
      std::fill(mu.begin(), mu.end(), p.mu.front());
    } else if (!p.mu.empty()) {
      check(p.mu.size() == static_cast<std::size_t>(m),
            ErrorCode::kInvalidConfig,
            "make_env: mu needs one entry or one per action");
      mu = p.mu;
    }
    const int states = p.lead_in + 1;
    std::vector<std::vector<Outcome>> outcomes;
    for (int s = 0; s < p.lead_in; ++s) {
      for (int a = 0; a < m; ++a) {
        outcomes.push_back({Outcome{1.0, s + 1, 0.0, 0.0, false}});
      }
    }
    for (int a = 0; a < m; ++a) {
      outcomes.push_back({Outcome{1.0, 0, mu[a], p.sigma, true}});
    }
    return EnvModel(states, m, p.gamma, 0, std::move(outcomes));
  }

  check(p.length >= 1, ErrorCode::kInvalidConfig,
        "make_env: chain length must be positive");
  const double noise = p.kind == EnvKind::kNoisyChain ? p.sigma : 0.0;
  const int forward = m - 1;
  std::vector<std::vector<Outcome>> outcomes;
  for (int s = 0; s < p.length; ++s) {
    const bool last = s == p.length - 1;
    for (int a = 0; a < m; ++a) {
      if (a == forward) {
        const double reward = p.step_reward + (last ? p.goal_reward : 0.0);
        outcomes.push_back(
            {Outcome{1.0, last ? 0 : s + 1, reward, noise, last}});
      } else {
        outcomes.push_back({Outcome{1.0, 0, 0.0, 0.0, true}});
      }
    }
  }
  return EnvModel(p.length, m, p.gamma, 0, std::move(outcomes));
}

ValueTable true_optimal_values(const EnvModel& env) {
  const int n = env.state_count();
  const int m = env.action_count();
  ValueTable q(n, m);
  std::vector<double> v(n, 0.0);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double change = 0.0;
    for (int s = 0; s < n; ++s) {
      for (int a = 0; a < m; ++a) {
        const double updated = backup(env, env.outcomes(s, a), v);
        change = std::max(change, std::abs(updated - q.at(s, a)));
        q.at(s, a) = updated;
      }
    }
    for (int s = 0; s < n; ++s) v[s] = max_value(q.row(s));
    if (change <= kSweepTolerance) return q;
  }
  fail(ErrorCode::kNumeric,
       "true_optimal_values: value iteration did not converge");
}

double evaluate_policy(const EnvModel& env, std::span<const int> policy,
                       int state) {
  const int n = env.state_count();
  check(policy.size() == static_cast<std::size_t>(n), ErrorCode::kShape,
        "evaluate_policy: need one action per state");
  std::vector<double> v(n, 0.0);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double change = 0.0;
    for (int s = 0; s < n; ++s) {
      const double updated = backup(env, env.outcomes(s, policy[s]), v);
      change = std::max(change, std::abs(updated - v[s]));
      v[s] = updated;
    }
    if (change <= kSweepTolerance) return v.at(state);
  }
  fail(ErrorCode::kNumeric, "evaluate_policy: policy evaluation diverged");
}

}  // namespace dqlab

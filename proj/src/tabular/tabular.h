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

#ifndef DQLAB_TABULAR_TABULAR_H_
#define DQLAB_TABULAR_TABULAR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/env.h"
#include "core/rng.h"

namespace dqlab {

struct QTable {
  ValueTable values;
  double alpha = 0.1;
};

struct DoubleQTables {
  QTable a;
  QTable b;
};

enum class TableId { kA, kB };

// r if terminal, otherwise r + gamma * max_a next_values[a].
double q_target(double reward, double gamma,
                std::span<const double> next_values, bool terminal);

// Q(s, a) += alpha * (target - Q(s, a)); no other entry changes.
void q_update(QTable& table, const Transition& t, double gamma);

// r + gamma * evaluator[s', argmax selector[s', .]] (r if terminal).
double double_q_target(const QTable& selector, const QTable& evaluator,
                       const Transition& t, double gamma);

// A fair coin picks the table to update; it selects with itself and evaluates
// with the other. Returns the table that changed.
TableId double_q_update(DoubleQTables& tables, const Transition& t,
                        double gamma, Rng& rng);

// Greedy action with probability 1 - epsilon, uniform otherwise. Always
// consumes exactly one uniform draw, plus one more when exploring.
int epsilon_greedy(std::span<const double> values, double epsilon, Rng& rng);

enum class TabularAlgo { kQ, kDoubleQ };

std::optional<TabularAlgo> parse_tabular_algo(const std::string& name);
std::string tabular_algo_name(TabularAlgo algo);

struct TabularSchedule {
  int episodes = 10000;
  // Step size for the n-th update of a cell is alpha / n^alpha_decay;
  // alpha_decay == 0 keeps it constant.
  double alpha = 0.1;
  double alpha_decay = 0.0;
  // Behaviour epsilon, linear from start to end over the first
  // epsilon_anneal_episodes episodes.
  double epsilon_start = 0.1;
  double epsilon_end = 0.1;
  int epsilon_anneal_episodes = 1;
  double initial_value = 0.0;
  int max_episode_steps = 1000;
};

void validate(const TabularSchedule& schedule);

struct TabularEpisode {
  int episode = 0;
  // max_a Q(s0, a) for Q-learning; for Double Q the average of the two cross
  // evaluations A(s0, argmax B) and B(s0, argmax A).
  double start_value_estimate = 0.0;
  // Exact discounted return of the current greedy policy from the start.
  double greedy_return = 0.0;
};

struct TabularRun {
  TabularAlgo algo = TabularAlgo::kQ;
  std::vector<TabularEpisode> trace;
  ValueTable table_a;
  // Only for Double Q.
  std::optional<ValueTable> table_b;
};

// Start-state value estimate as reported in the trace.
double start_value_estimate(const EnvModel& env, const ValueTable& a,
                            const ValueTable* b);

// Greedy policy of a table (ties to the lowest action).
std::vector<int> greedy_policy(const ValueTable& values);

TabularRun train_tabular(const EnvModel& env, TabularAlgo algo,
                         const TabularSchedule& schedule, std::uint64_t seed);

}  // namespace dqlab

#endif  // DQLAB_TABULAR_TABULAR_H_

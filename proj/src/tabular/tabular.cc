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

#include "tabular/tabular.h"

#include <algorithm>
#include <cmath>

#include "core/argmax.h"
#include "core/error.h"

namespace dqlab {
namespace {

double linear_schedule(double start, double end, int span, int t) {
  if (t >= span) return end;
  return start + (end - start) * static_cast<double>(t) / span;
}

}  // namespace

double q_target(double reward, double gamma,
                std::span<const double> next_values, bool terminal) {
  if (terminal) return reward;
  return reward + gamma * max_value(next_values);
}

void q_update(QTable& table, const Transition& t, double gamma) {
  const double target =
      q_target(t.reward, gamma, table.values.row(t.next_state), t.terminal);
  double& q = table.values.at(t.state, t.action);
  q += table.alpha * (target - q);
}

double double_q_target(const QTable& selector, const QTable& evaluator,
                       const Transition& t, double gamma) {
  if (t.terminal) return t.reward;
  const std::size_t a = argmax_tiebreak(selector.values.row(t.next_state));
  return t.reward + gamma * evaluator.values.at(t.next_state,
                                                static_cast<int>(a));
}

TableId double_q_update(DoubleQTables& tables, const Transition& t,
                        double gamma, Rng& rng) {
  const TableId which = rng.bernoulli(0.5) ? TableId::kA : TableId::kB;
  QTable& updated = which == TableId::kA ? tables.a : tables.b;
  const QTable& other = which == TableId::kA ? tables.b : tables.a;
  const double target = double_q_target(updated, other, t, gamma);
  double& q = updated.values.at(t.state, t.action);
  q += updated.alpha * (target - q);
  return which;
}

int epsilon_greedy(std::span<const double> values, double epsilon, Rng& rng) {
  check(epsilon >= 0.0 && epsilon <= 1.0, ErrorCode::kInvalidInput,
        "epsilon_greedy: epsilon must lie in [0, 1]");
  check(!values.empty(), ErrorCode::kInvalidInput,
        "epsilon_greedy: empty value vector");
  if (rng.uniform01() < epsilon) {
    return static_cast<int>(rng.uniform_int(values.size()));
  }
  return static_cast<int>(argmax_tiebreak(values));
}

std::optional<TabularAlgo> parse_tabular_algo(const std::string& name) {
  if (name == "q") return TabularAlgo::kQ;
  if (name == "double-q") return TabularAlgo::kDoubleQ;
  return std::nullopt;
}

std::string tabular_algo_name(TabularAlgo algo) {
  return algo == TabularAlgo::kQ ? "q" : "double-q";
}

void validate(const TabularSchedule& s) {
  check(s.episodes >= 1, ErrorCode::kInvalidConfig,
        "tabular schedule: episodes must be >= 1");
  check(s.alpha >= 0.0 && s.alpha <= 1.0, ErrorCode::kInvalidConfig,
        "tabular schedule: alpha must lie in [0, 1]");
  check(s.alpha_decay >= 0.0 && s.alpha_decay <= 1.0,
        ErrorCode::kInvalidConfig,
        "tabular schedule: alpha_decay must lie in [0, 1]");
  check(s.epsilon_start >= 0.0 && s.epsilon_start <= 1.0 &&
            s.epsilon_end >= 0.0 && s.epsilon_end <= 1.0,
        ErrorCode::kInvalidConfig,
        "tabular schedule: epsilon values must lie in [0, 1]");
  check(s.epsilon_anneal_episodes >= 1, ErrorCode::kInvalidConfig,
        "tabular schedule: epsilon_anneal_episodes must be >= 1");
  check(s.max_episode_steps >= 1, ErrorCode::kInvalidConfig,
        "tabular schedule: max_episode_steps must be >= 1");
  check(std::isfinite(s.initial_value), ErrorCode::kInvalidConfig,
        "tabular schedule: initial_value must be finite");
}

double start_value_estimate(const EnvModel& env, const ValueTable& a,
                            const ValueTable* b) {
  const int s0 = env.initial_state();
  if (b == nullptr) return max_value(a.row(s0));
  const auto best_a = static_cast<int>(argmax_tiebreak(a.row(s0)));
  const auto best_b = static_cast<int>(argmax_tiebreak(b->row(s0)));
  return 0.5 * (a.at(s0, best_b) + b->at(s0, best_a));
}

std::vector<int> greedy_policy(const ValueTable& values) {
  std::vector<int> policy(values.state_count());
  for (int s = 0; s < values.state_count(); ++s) {
    policy[s] = static_cast<int>(argmax_tiebreak(values.row(s)));
  }
  return policy;
}

TabularRun train_tabular(const EnvModel& env, TabularAlgo algo,
                         const TabularSchedule& schedule, std::uint64_t seed) {
  validate(schedule);
  const int n = env.state_count();
  const int m = env.action_count();
  Rng env_rng = Rng::for_stream(seed, Stream::kEnvironment);
  Rng explore_rng = Rng::for_stream(seed, Stream::kExploration);
  Rng coin_rng = Rng::for_stream(seed, Stream::kTableCoin);

  DoubleQTables tables{QTable{ValueTable(n, m, schedule.initial_value),
                              schedule.alpha},
                       QTable{ValueTable(n, m, schedule.initial_value),
                              schedule.alpha}};
  const bool is_double = algo == TabularAlgo::kDoubleQ;
  ValueTable visits_a(n, m, 0.0);
  ValueTable visits_b(n, m, 0.0);
  std::vector<double> behaviour(m);

  auto step_size = [&](double visits) {
    if (schedule.alpha_decay == 0.0) return schedule.alpha;
    return schedule.alpha / std::pow(visits, schedule.alpha_decay);
  };

  TabularRun run;
  run.algo = algo;
  run.trace.reserve(schedule.episodes);
  for (int episode = 0; episode < schedule.episodes; ++episode) {
    const double epsilon =
        linear_schedule(schedule.epsilon_start, schedule.epsilon_end,
                        schedule.epsilon_anneal_episodes, episode);
    int state = env.initial_state();
    for (int t = 0; t < schedule.max_episode_steps; ++t) {
      if (is_double) {
        for (int a = 0; a < m; ++a) {
          behaviour[a] =
              0.5 * (tables.a.values.at(state, a) + tables.b.values.at(state, a));
        }
      } else {
        std::copy(tables.a.values.row(state).begin(),
                  tables.a.values.row(state).end(), behaviour.begin());
      }
      const int action = epsilon_greedy(behaviour, epsilon, explore_rng);
      const StepResult r = env.step(state, action, env_rng);
      const Transition tr{state, action, r.reward, r.next_state, r.terminal};
      if (is_double) {
        tables.a.alpha = step_size(visits_a.at(state, action) + 1.0);
        tables.b.alpha = step_size(visits_b.at(state, action) + 1.0);
        const TableId updated =
            double_q_update(tables, tr, env.gamma(), coin_rng);
        (updated == TableId::kA ? visits_a : visits_b).at(state, action) += 1.0;
      } else {
        visits_a.at(state, action) += 1.0;
        tables.a.alpha = step_size(visits_a.at(state, action));
        q_update(tables.a, tr, env.gamma());
      }
      if (r.terminal) break;
      state = r.next_state;
    }

    TabularEpisode row;
    row.episode = episode;
    row.start_value_estimate = start_value_estimate(
        env, tables.a.values, is_double ? &tables.b.values : nullptr);
    ValueTable acting = tables.a.values;
    if (is_double) {
      for (std::size_t i = 0; i < acting.data().size(); ++i) {
        acting.data()[i] =
            0.5 * (tables.a.values.data()[i] + tables.b.values.data()[i]);
      }
    }
    row.greedy_return =
        evaluate_policy(env, greedy_policy(acting), env.initial_state());
    run.trace.push_back(row);
  }
  run.table_a = tables.a.values;
  if (is_double) run.table_b = tables.b.values;
  return run;
}

}  // namespace dqlab

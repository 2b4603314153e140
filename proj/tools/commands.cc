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

#include "commands.h"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include "dqlab/dqlab.h"
#include "output.h"
#include "svg.h"

#ifndef DQLAB_DATA_DIR
#define DQLAB_DATA_DIR "data"
#endif

namespace dqlab_cli {
namespace {

constexpr const char* kSingleColor = "#e6862b";
constexpr const char* kDoubleColor = "#2b6fe6";
constexpr const char* kTruthColor = "#555555";

void ok(dqlab_status status, const std::string& what) {
  if (status == DQLAB_OK) return;
  throw RuntimeError(what + ": " + dqlab_status_name(status) + ": " +
                     dqlab_last_error_message());
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using EnvPtr = std::unique_ptr<dqlab_env, Deleter<dqlab_env, dqlab_env_destroy>>;
using MlpPtr = std::unique_ptr<dqlab_mlp, Deleter<dqlab_mlp, dqlab_mlp_destroy>>;
using TabularPtr =
    std::unique_ptr<dqlab_tabular_run,
                    Deleter<dqlab_tabular_run, dqlab_tabular_run_destroy>>;
using DeepPtr =
    std::unique_ptr<dqlab_deep_run, Deleter<dqlab_deep_run, dqlab_deep_run_destroy>>;
using TablePtr =
    std::unique_ptr<dqlab_score_table,
                    Deleter<dqlab_score_table, dqlab_score_table_destroy>>;

std::string percent(double fraction, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f%%", decimals, 100.0 * fraction);
  return buf;
}

// ---- shared keys ----

std::vector<KeySpec> common_specs() {
  return {
      {"seed", KeyType::kUint, "1", "Master seed for every random stream", {}},
      {"out", KeyType::kString, "dqlab_out", "Output directory", {}},
      {"svg", KeyType::kBool, "false", "Also write SVG figures", {}},
  };
}

std::vector<KeySpec> env_specs() {
  dqlab_env_params p;
  dqlab_env_params_init(&p);
  return {
      {"env", KeyType::kChoice, "noisy-terminal", "Environment kind",
       {"noisy-terminal", "chain", "noisy-chain"}},
      {"actions", KeyType::kInt, num(p.actions), "Number of actions m", {}},
      {"gamma", KeyType::kReal, num(p.gamma), "Discount factor", {}},
      {"lead-in", KeyType::kInt, num(p.lead_in),
       "noisy-terminal: zero-reward states before the decision state", {}},
      {"mu", KeyType::kRealList, "",
       "noisy-terminal: per-action reward means (empty means all zero)", {}},
      {"sigma", KeyType::kReal, num(p.sigma), "Reward noise standard deviation", {}},
      {"length", KeyType::kInt, num(p.length), "chain: number of states L", {}},
      {"step-reward", KeyType::kReal, num(p.step_reward),
       "chain: reward per forward step", {}},
      {"goal-reward", KeyType::kReal, num(p.goal_reward),
       "chain: extra reward on reaching the end", {}},
  };
}

template <typename... Lists>
std::vector<KeySpec> concat(std::vector<KeySpec> first, Lists... rest) {
  (first.insert(first.end(), rest.begin(), rest.end()), ...);
  return first;
}

EnvPtr make_env(const Settings& s) {
  dqlab_env_params p;
  dqlab_env_params_init(&p);
  ok(dqlab_env_kind_from_name(s.str("env").c_str(), &p.kind), "env");
  p.actions = static_cast<int>(s.integer("actions"));
  p.gamma = s.real("gamma");
  p.lead_in = static_cast<int>(s.integer("lead-in"));
  const std::vector<double> mu = s.reals("mu");
  p.mu = mu.empty() ? nullptr : mu.data();
  p.mu_count = mu.size();
  p.sigma = s.real("sigma");
  p.length = static_cast<int>(s.integer("length"));
  p.step_reward = s.real("step-reward");
  p.goal_reward = s.real("goal-reward");
  dqlab_env* env = nullptr;
  ok(dqlab_env_create(&p, &env), "creating environment");
  return EnvPtr(env);
}

std::string prepare_output(const Settings& s, const std::string& command) {
  const std::string dir = s.str("out");
  ensure_directory(dir);
  write_text_file(join_path(dir, "manifest.txt"), s.manifest(command));
  return dir;
}

// ---- bias-bars ----

void run_bias_bars(const Settings& s) {
  const std::string dir = prepare_output(s, "bias-bars");
  const std::int64_t m_max = s.integer("m-max");
  const std::int64_t reps = s.integer("reps");
  const std::uint64_t seed = s.uinteger("seed");
  const int noise =
      s.str("noise") == "normal" ? DQLAB_NOISE_NORMAL : DQLAB_NOISE_UNIFORM;
  if (m_max < 1) throw UsageError("m-max must be >= 1");
  if (reps < 1) throw UsageError("reps must be >= 1");

  CsvWriter csv(join_path(dir, "bias_bars.csv"),
                {"m", "estimator", "mean_bias", "stderr", "reps", "seed"});
  Series single{"single (max)", kSingleColor, {}, {}};
  Series dbl{"double", kDoubleColor, {}, {}};
  std::vector<std::string> categories;
  for (int m = 1; m <= m_max; ++m) {
    for (int est : {DQLAB_ESTIMATOR_SINGLE, DQLAB_ESTIMATOR_DOUBLE}) {
      dqlab_bias_estimate b;
      ok(dqlab_monte_carlo_bias(est, noise, m, reps, seed, &b), "bias estimate");
      csv.row({num(m), est == DQLAB_ESTIMATOR_SINGLE ? "single" : "double",
               num(b.mean), num(b.standard_error), num(b.repetitions),
               num(seed)});
      (est == DQLAB_ESTIMATOR_SINGLE ? single : dbl).y.push_back(b.mean);
    }
    categories.push_back(std::to_string(m));
  }
  csv.close();
  std::cout << "wrote " << csv.path() << "\n";
  if (s.flag("svg")) {
    const std::string path = join_path(dir, "bias_bars.svg");
    write_text_file(path, svg_bar_chart("Estimator bias by number of actions",
                                        categories, {single, dbl}));
    std::cout << "wrote " << path << "\n";
  }
}

// ---- polyfit ----

void run_polyfit(const Settings& s) {
  const std::string dir = prepare_output(s, "polyfit");
  std::size_t n = 0;
  ok(dqlab_polyfit_default_grid(nullptr, 0, &n), "grid");
  std::vector<double> grid(n);
  ok(dqlab_polyfit_default_grid(grid.data(), grid.size(), &n), "grid");

  struct Row {
    int kind;
    int degree;
    const char* name;
  };
  const Row rows[] = {{DQLAB_TRUE_SINE, 6, "sin(s), degree 6"},
                      {DQLAB_TRUE_BUMP, 6, "2 exp(-s^2), degree 6"},
                      {DQLAB_TRUE_BUMP, 9, "2 exp(-s^2), degree 9"}};
  for (int r = 0; r < 3; ++r) {
    std::vector<dqlab_curve_point> points(grid.size());
    ok(dqlab_polyfit_curve(rows[r].kind, rows[r].degree, grid.data(),
                           grid.size(), points.data()),
       "polyfit row " + std::to_string(r + 1));
    const std::string name = "polyfit_row" + std::to_string(r + 1);
    CsvWriter csv(join_path(dir, name + ".csv"),
                  {"row", "s", "v_true", "q_max", "single_bias", "double_bias"});
    double single_sum = 0.0, double_abs_sum = 0.0;
    Series truth{"V*(s)", kTruthColor, {}, {}};
    Series qmax{"max_a Q(s,a)", "#2ba84a", {}, {}};
    Series single{"single bias", kSingleColor, {}, {}};
    Series dbl{"double bias", kDoubleColor, {}, {}};
    for (const auto& p : points) {
      csv.row({num(r + 1), num(p.s), num(p.v_true), num(p.q_max),
               num(p.single_bias), num(p.double_bias)});
      single_sum += p.single_bias;
      double_abs_sum += std::abs(p.double_bias);
      for (Series* ser : {&truth, &qmax, &single, &dbl}) ser->x.push_back(p.s);
      truth.y.push_back(p.v_true);
      qmax.y.push_back(p.q_max);
      single.y.push_back(p.single_bias);
      dbl.y.push_back(p.double_bias);
    }
    csv.close();
    const double count = static_cast<double>(points.size());
    std::cout << "row " << r + 1 << " (" << rows[r].name
              << "): mean single bias " << num(single_sum / count)
              << ", mean |double bias| " << num(double_abs_sum / count) << "\n";
    std::cout << "wrote " << csv.path() << "\n";
    if (s.flag("svg")) {
      const std::string path = join_path(dir, name + ".svg");
      write_text_file(path, svg_line_chart(rows[r].name, "state s",
                                           {truth, qmax, single, dbl}));
      std::cout << "wrote " << path << "\n";
    }
  }
}

// ---- tabular-train ----

std::vector<KeySpec> tabular_specs() {
  dqlab_tabular_config c;
  dqlab_tabular_config_init(&c);
  return concat(
      common_specs(), env_specs(),
      std::vector<KeySpec>{
          {"algo", KeyType::kChoice, "q", "Learning rule", {"q", "double-q"}},
          {"episodes", KeyType::kInt, num(c.episodes), "Training episodes", {}},
          {"alpha", KeyType::kReal, num(c.alpha), "Step size", {}},
          {"alpha-decay", KeyType::kReal, num(c.alpha_decay),
           "Polynomial step-size decay exponent (0 keeps alpha constant)", {}},
          {"epsilon-start", KeyType::kReal, num(c.epsilon_start),
           "Exploration rate in the first episode", {}},
          {"epsilon-end", KeyType::kReal, num(c.epsilon_end),
           "Exploration rate after annealing", {}},
          {"epsilon-anneal-episodes", KeyType::kInt,
           num(c.epsilon_anneal_episodes), "Episodes of linear annealing", {}},
          {"initial-value", KeyType::kReal, num(c.initial_value),
           "Initial table entries", {}},
          {"max-episode-steps", KeyType::kInt, num(c.max_episode_steps),
           "Episode length cap", {}},
      });
}

void run_tabular(const Settings& s) {
  EnvPtr env = make_env(s);
  dqlab_tabular_config c;
  dqlab_tabular_config_init(&c);
  c.episodes = static_cast<int>(s.integer("episodes"));
  c.alpha = s.real("alpha");
  c.alpha_decay = s.real("alpha-decay");
  c.epsilon_start = s.real("epsilon-start");
  c.epsilon_end = s.real("epsilon-end");
  c.epsilon_anneal_episodes = static_cast<int>(s.integer("epsilon-anneal-episodes"));
  c.initial_value = s.real("initial-value");
  c.max_episode_steps = static_cast<int>(s.integer("max-episode-steps"));
  const std::string algo = s.str("algo");
  const std::uint64_t seed = s.uinteger("seed");
  const std::string dir = prepare_output(s, "tabular-train");

  dqlab_tabular_run* raw = nullptr;
  ok(dqlab_tabular_train(env.get(),
                         algo == "q" ? DQLAB_TABULAR_Q : DQLAB_TABULAR_DOUBLE_Q,
                         &c, seed, &raw),
     "tabular training");
  TabularPtr run(raw);
  CsvWriter csv(join_path(dir, "tabular_trace.csv"),
                {"episode", "algo", "seed", "start_value_estimate",
                 "greedy_return"});
  Series estimate{"start value estimate", kSingleColor, {}, {}};
  Series greedy{"greedy return", kTruthColor, {}, {}};
  dqlab_tabular_row row{};
  const std::size_t rows = dqlab_tabular_run_row_count(run.get());
  for (std::size_t i = 0; i < rows; ++i) {
    ok(dqlab_tabular_run_row(run.get(), i, &row), "trace row");
    csv.row({num(row.episode), algo, num(seed), num(row.start_value_estimate),
             num(row.greedy_return)});
    estimate.x.push_back(row.episode);
    estimate.y.push_back(row.start_value_estimate);
    greedy.x.push_back(row.episode);
    greedy.y.push_back(row.greedy_return);
  }
  csv.close();
  std::cout << "final start-state estimate " << num(row.start_value_estimate)
            << ", greedy return " << num(row.greedy_return) << "\n";
  std::cout << "wrote " << csv.path() << "\n";
  if (s.flag("svg")) {
    const std::string path = join_path(dir, "tabular_trace.svg");
    write_text_file(path, svg_line_chart(algo + " start-state value", "episode",
                                         {estimate, greedy}));
    std::cout << "wrote " << path << "\n";
  }
}

// ---- deep-train ----

int preset_id(const std::string& name) {
  if (name == "atari") return DQLAB_PRESET_ATARI;
  if (name == "tuned") return DQLAB_PRESET_TUNED;
  return DQLAB_PRESET_DESK;
}

dqlab_agent_config preset_config(const std::string& name) {
  dqlab_agent_config c;
  ok(dqlab_agent_config_init(&c, preset_id(name)), "agent preset");
  return c;
}

std::string hidden_list(const dqlab_agent_config& c) {
  std::string s;
  for (std::size_t i = 0; i < c.hidden_layer_count; ++i) {
    if (i) s += ",";
    s += num(c.hidden_layers[i]);
  }
  return s;
}

std::string bool_text(int v) { return v ? "true" : "false"; }

std::vector<KeySpec> agent_specs(const dqlab_agent_config& c) {
  return {
      {"learning-rate", KeyType::kReal, num(c.learning_rate), "RMSProp step size", {}},
      {"rmsprop-decay", KeyType::kReal, num(c.rmsprop_decay),
       "Decay of the squared-gradient average", {}},
      {"rmsprop-damping", KeyType::kReal, num(c.rmsprop_damping),
       "Added under the square root", {}},
      {"target-sync-period", KeyType::kInt, num(c.target_sync_period),
       "Environment steps between target-network copies (tau)", {}},
      {"replay-capacity", KeyType::kInt, num(c.replay_capacity),
       "Replay memory size", {}},
      {"minibatch-size", KeyType::kInt, num(c.minibatch_size), "Minibatch size", {}},
      {"update-every", KeyType::kInt, num(c.update_every),
       "Environment steps per gradient update", {}},
      {"replay-start", KeyType::kInt, num(c.replay_start),
       "Transitions stored before learning starts", {}},
      {"epsilon-start", KeyType::kReal, num(c.epsilon_start),
       "Initial exploration rate", {}},
      {"epsilon-end", KeyType::kReal, num(c.epsilon_end),
       "Final exploration rate", {}},
      {"epsilon-anneal-steps", KeyType::kInt, num(c.epsilon_anneal_steps),
       "Steps of linear annealing", {}},
      {"eval-epsilon", KeyType::kReal, num(c.eval_epsilon),
       "Exploration rate during evaluation phases", {}},
      {"shared-output-bias", KeyType::kBool, bool_text(c.shared_output_bias),
       "One bias shared by all action outputs", {}},
      {"clip-rewards", KeyType::kBool, bool_text(c.clip_rewards),
       "Clip rewards to [-1, 1]", {}},
      {"clip-error", KeyType::kBool, bool_text(c.clip_error),
       "Clip the TD error to [-1, 1] in the gradient", {}},
      {"hidden-layers", KeyType::kIntList, hidden_list(c),
       "Hidden layer widths", {}},
      {"eval-interval", KeyType::kInt, num(c.eval_interval),
       "Steps between trace rows", {}},
      {"eval-steps", KeyType::kInt, num(c.eval_steps),
       "Length of each evaluation phase", {}},
      {"max-episode-steps", KeyType::kInt, num(c.max_episode_steps),
       "Episode length cap", {}},
      {"checkpoint-every", KeyType::kInt, num(c.checkpoint_every),
       "Steps between periodic checkpoints (0 keeps only the final one)", {}},
  };
}

std::vector<KeySpec> deep_specs(const KeyValues& file, const KeyValues& flags) {
  std::string preset = "desk";
  if (auto it = file.find("preset"); it != file.end()) preset = it->second;
  if (auto it = flags.find("preset"); it != flags.end()) preset = it->second;
  if (preset != "atari" && preset != "tuned" && preset != "desk") {
    throw UsageError("invalid value '" + preset +
                     "' for preset (expected one of: atari tuned desk)");
  }
  return concat(
      common_specs(), env_specs(),
      std::vector<KeySpec>{
          {"algo", KeyType::kChoice, "dqn", "Learning rule", {"dqn", "ddqn"}},
          {"steps", KeyType::kInt, "50000", "Environment steps", {}},
          {"preset", KeyType::kChoice, "desk",
           "Hyper-parameter preset; the keys below default to it",
           {"atari", "tuned", "desk"}},
      },
      agent_specs(preset_config(preset)));
}

std::string preset_table() {
  const char* names[] = {"atari", "tuned", "desk"};
  dqlab_agent_config c[3];
  for (int i = 0; i < 3; ++i) c[i] = preset_config(names[i]);
  std::ostringstream out;
  out << "Presets (deep-train --preset):\n";
  char line[160];
  std::snprintf(line, sizeof(line), "  %-22s %-12s %-12s %-12s\n", "key",
                "atari", "tuned", "desk");
  out << line;
  auto add = [&](const char* key, auto get) {
    std::snprintf(line, sizeof(line), "  %-22s %-12s %-12s %-12s\n", key,
                  get(c[0]).c_str(), get(c[1]).c_str(), get(c[2]).c_str());
    out << line;
  };
  using C = const dqlab_agent_config&;
  add("learning-rate", [](C x) { return num(x.learning_rate); });
  add("rmsprop-decay", [](C x) { return num(x.rmsprop_decay); });
  add("target-sync-period", [](C x) { return num(x.target_sync_period); });
  add("replay-capacity", [](C x) { return num(x.replay_capacity); });
  add("minibatch-size", [](C x) { return num(x.minibatch_size); });
  add("update-every", [](C x) { return num(x.update_every); });
  add("replay-start", [](C x) { return num(x.replay_start); });
  add("epsilon-start", [](C x) { return num(x.epsilon_start); });
  add("epsilon-end", [](C x) { return num(x.epsilon_end); });
  add("epsilon-anneal-steps", [](C x) { return num(x.epsilon_anneal_steps); });
  add("eval-epsilon", [](C x) { return num(x.eval_epsilon); });
  add("shared-output-bias", [](C x) { return bool_text(x.shared_output_bias); });
  add("clip-rewards", [](C x) { return bool_text(x.clip_rewards); });
  add("clip-error", [](C x) { return bool_text(x.clip_error); });
  add("hidden-layers", [](C x) { return hidden_list(x); });
  add("eval-interval", [](C x) { return num(x.eval_interval); });
  add("eval-steps", [](C x) { return num(x.eval_steps); });
  add("max-episode-steps", [](C x) { return num(x.max_episode_steps); });
  return out.str();
}

void run_deep(const Settings& s) {
  EnvPtr env = make_env(s);
  dqlab_agent_config c = preset_config(s.str("preset"));
  c.gamma = s.real("gamma");
  c.learning_rate = s.real("learning-rate");
  c.rmsprop_decay = s.real("rmsprop-decay");
  c.rmsprop_damping = s.real("rmsprop-damping");
  c.target_sync_period = s.integer("target-sync-period");
  c.replay_capacity = s.integer("replay-capacity");
  c.minibatch_size = s.integer("minibatch-size");
  c.update_every = s.integer("update-every");
  c.replay_start = s.integer("replay-start");
  c.epsilon_start = s.real("epsilon-start");
  c.epsilon_end = s.real("epsilon-end");
  c.epsilon_anneal_steps = s.integer("epsilon-anneal-steps");
  c.eval_epsilon = s.real("eval-epsilon");
  c.shared_output_bias = s.flag("shared-output-bias");
  c.clip_rewards = s.flag("clip-rewards");
  c.clip_error = s.flag("clip-error");
  const std::vector<int> hidden = s.ints("hidden-layers");
  if (hidden.size() > DQLAB_MAX_HIDDEN_LAYERS) {
    throw UsageError("hidden-layers: at most " +
                     std::to_string(DQLAB_MAX_HIDDEN_LAYERS) + " layers");
  }
  std::copy(hidden.begin(), hidden.end(), c.hidden_layers);
  c.hidden_layer_count = hidden.size();
  c.eval_interval = s.integer("eval-interval");
  c.eval_steps = s.integer("eval-steps");
  c.max_episode_steps = static_cast<int>(s.integer("max-episode-steps"));
  c.checkpoint_every = s.integer("checkpoint-every");
  const std::string dir = prepare_output(s, "deep-train");
  c.checkpoint_dir = dir.c_str();
  const std::string algo = s.str("algo");

  dqlab_deep_run* raw = nullptr;
  ok(dqlab_deep_train(env.get(),
                      algo == "dqn" ? DQLAB_DEEP_DQN : DQLAB_DEEP_DOUBLE_DQN, &c,
                      s.integer("steps"), s.uinteger("seed"), &raw),
     "deep training");
  DeepPtr run(raw);
  CsvWriter csv(join_path(dir, "deep_trace.csv"),
                {"step", "value_estimate", "greedy_return", "epsilon", "loss"});
  Series estimate{"value estimate", kSingleColor, {}, {}};
  Series greedy{"greedy return", kTruthColor, {}, {}};
  for (std::size_t i = 0; i < dqlab_deep_run_row_count(run.get()); ++i) {
    dqlab_deep_row r;
    ok(dqlab_deep_run_row(run.get(), i, &r), "trace row");
    csv.row({num(r.step), num(r.value_estimate), num(r.greedy_return),
             num(r.epsilon), num(r.loss)});
    estimate.x.push_back(static_cast<double>(r.step));
    estimate.y.push_back(r.value_estimate);
    greedy.x.push_back(static_cast<double>(r.step));
    greedy.y.push_back(r.greedy_return);
  }
  csv.close();
  dqlab_deep_summary summary;
  ok(dqlab_deep_run_summary(run.get(), &summary), "run summary");
  std::cout << algo << ": start-state estimate " << num(summary.start_value_estimate)
            << ", greedy return " << num(summary.greedy_return) << ", "
            << summary.updates << " updates\n";
  std::cout << "wrote " << csv.path() << "\n";
  for (std::size_t i = 0; i < dqlab_deep_run_checkpoint_count(run.get()); ++i) {
    std::cout << "wrote " << dqlab_deep_run_checkpoint_path(run.get(), i) << "\n";
  }
  if (s.flag("svg")) {
    const std::string path = join_path(dir, "deep_trace.svg");
    write_text_file(path, svg_line_chart(algo + " value estimates", "step",
                                         {estimate, greedy}));
    std::cout << "wrote " << path << "\n";
  }
}

// ---- eval-value ----

void run_eval_value(const Settings& s) {
  if (s.str("checkpoint").empty()) throw UsageError("checkpoint is required");
  EnvPtr env = make_env(s);
  dqlab_mlp* raw = nullptr;
  ok(dqlab_mlp_load(s.str("checkpoint").c_str(), &raw), "loading checkpoint");
  MlpPtr mlp(raw);
  const std::string dir = prepare_output(s, "eval-value");
  dqlab_value_report r;
  ok(dqlab_evaluate_value(env.get(), mlp.get(),
                          static_cast<int>(s.integer("episodes")),
                          s.real("epsilon"),
                          static_cast<int>(s.integer("max-episode-steps")),
                          s.uinteger("seed"), &r),
     "evaluation");
  CsvWriter csv(join_path(dir, "eval_value.csv"),
                {"episodes", "epsilon", "value_estimate", "mean_return",
                 "start_state_return", "visited_states", "truncated_episodes"});
  csv.row({num(r.episodes), num(s.real("epsilon")), num(r.value_estimate),
           num(r.mean_return), num(r.start_state_return),
           num(r.visited_states), num(r.truncated_episodes)});
  csv.close();
  std::cout << "value estimate " << num(r.value_estimate)
            << ", discounted return " << num(r.mean_return) << " over "
            << r.visited_states << " visited states";
  if (r.truncated_episodes > 0) {
    std::cout << " (" << r.truncated_episodes << " truncated episodes)";
  }
  std::cout << "\nwrote " << csv.path() << "\n";
}

// ---- scores ----

void run_scores(const Settings& s) {
  const std::string table_name = s.str("table");
  const std::string file =
      table_name == "noop" ? "scores_noop.csv" : "scores_human_start.csv";
  dqlab_score_table* raw = nullptr;
  ok(dqlab_score_table_load(join_path(s.str("data-dir"), file).c_str(), &raw),
     "loading score table");
  TablePtr table(raw);
  std::size_t agent = 0;
  if (dqlab_score_table_agent_index(table.get(), s.str("agent").c_str(),
                                    &agent) != DQLAB_OK) {
    std::string names;
    for (std::size_t i = 0; i < dqlab_score_table_agent_count(table.get()); ++i) {
      names += std::string(" ") + dqlab_score_table_agent(table.get(), i);
    }
    throw UsageError("unknown agent '" + s.str("agent") + "' (columns:" +
                     names + ")");
  }
  const std::string dir = prepare_output(s, "scores");
  CsvWriter csv(join_path(dir, "scores.csv"), {"game", "normalized_percent"});
  std::size_t skipped = 0;
  for (std::size_t g = 0; g < dqlab_score_table_game_count(table.get()); ++g) {
    double value = 0.0;
    int present = 0;
    ok(dqlab_score_table_normalized(table.get(), g, agent, &value, &present),
       "normalizing");
    const char* game = dqlab_score_table_game(table.get(), g);
    if (!present) {
      ++skipped;
      continue;
    }
    csv.row({game, num(100.0 * value)});
    char line[128];
    std::snprintf(line, sizeof(line), "%-22s %10s\n", game,
                  percent(value, 2).c_str());
    std::cout << line;
  }
  csv.close();
  dqlab_score_summary all;
  ok(dqlab_score_table_summarize(table.get(), agent, -1, &all), "summary");
  std::cout << all.count << " games";
  if (skipped) std::cout << " (" << skipped << " without a score)";
  std::cout << ": median " << percent(all.median, 1) << " mean "
            << percent(all.mean, 1) << "\n";
  std::size_t dqn = 0;
  if (dqlab_score_table_agent_index(table.get(), "dqn", &dqn) == DQLAB_OK &&
      dqn != agent) {
    dqlab_score_summary sub;
    ok(dqlab_score_table_summarize(table.get(), agent,
                                   static_cast<int64_t>(dqn), &sub),
       "subset summary");
    if (sub.count != all.count) {
      std::cout << sub.count << " games with a dqn score: median "
                << percent(sub.median, 1) << " mean " << percent(sub.mean, 1)
                << "\n";
    }
  }
  std::cout << "wrote " << csv.path() << "\n";
}

std::vector<KeySpec> fixed_specs(std::vector<KeySpec> extra) {
  return concat(common_specs(), std::move(extra));
}

}  // namespace

std::vector<Command> all_commands() {
  std::vector<Command> cmds;
  cmds.push_back(
      {"bias-bars",
       "Monte Carlo bias of the single and double estimators for m = 1..m-max",
       [](const KeyValues&, const KeyValues&) {
         return fixed_specs({
             {"m-max", KeyType::kInt, "10", "Largest number of actions", {}},
             {"reps", KeyType::kInt, "100", "Repetitions per bar", {}},
             {"noise", KeyType::kChoice, "normal", "Error distribution",
              {"normal", "uniform"}},
         });
       },
       run_bias_bars, ""});
  cmds.push_back(
      {"polyfit",
       "Polynomial value fits on sampled states and the resulting bias curves",
       [](const KeyValues&, const KeyValues&) { return fixed_specs({}); },
       run_polyfit, "Writes polyfit_row1.csv (sin, degree 6), polyfit_row2.csv "
                    "(bump, degree 6) and polyfit_row3.csv (bump, degree 9).\n"});
  cmds.push_back({"tabular-train", "Tabular Q-learning or Double Q-learning",
                  [](const KeyValues&, const KeyValues&) { return tabular_specs(); },
                  run_tabular, ""});
  cmds.push_back({"deep-train", "DQN or Double DQN with a small MLP",
                  deep_specs, run_deep, preset_table()});
  cmds.push_back(
      {"eval-value",
       "Value estimates of a saved network against realized discounted returns",
       [](const KeyValues&, const KeyValues&) {
         return concat(
             common_specs(), env_specs(),
             std::vector<KeySpec>{
                 {"checkpoint", KeyType::kString, "", "Network checkpoint file", {}},
                 {"episodes", KeyType::kInt, "100", "Evaluation episodes", {}},
                 {"epsilon", KeyType::kReal, "0.05", "Evaluation exploration rate", {}},
                 {"max-episode-steps", KeyType::kInt, "1000", "Episode length cap", {}},
             });
       },
       run_eval_value, ""});
  cmds.push_back(
      {"scores", "Normalized benchmark scores and their median and mean",
       [](const KeyValues&, const KeyValues&) {
         return fixed_specs({
             {"table", KeyType::kChoice, "noop", "Evaluation condition",
              {"noop", "human-start"}},
             {"agent", KeyType::kString, "double_dqn", "Agent column", {}},
             {"data-dir", KeyType::kString, DQLAB_DATA_DIR,
              "Directory holding the score tables", {}},
         });
       },
       run_scores,
       "Normalized score: (agent - random) / |human - random|.\n"});
  return cmds;
}

}  // namespace dqlab_cli

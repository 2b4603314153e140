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

#include "dqlab/dqlab.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bias_lab/bias_lab.h"
#include "core/argmax.h"
#include "core/env.h"
#include "core/error.h"
#include "core/rng.h"
#include "deep_agent/deep_agent.h"
#include "eval/scores.h"
#include "eval/value_metrics.h"
#include "neural/checkpoint.h"
#include "neural/mlp.h"
#include "polyfit/polyfit.h"
#include "tabular/tabular.h"

struct dqlab_env {
  dqlab::EnvModel model;
};

struct dqlab_tabular_run {
  dqlab::TabularRun run;
};

struct dqlab_mlp {
  dqlab::MlpParameters params;
};

struct dqlab_deep_run {
  dqlab::DeepRun run;
};

struct dqlab_score_table {
  dqlab::ScoreTable table;
};

namespace {

thread_local std::string last_error;

dqlab_status to_status(dqlab::ErrorCode code) {
  switch (code) {
    case dqlab::ErrorCode::kInvalidInput: return DQLAB_ERR_INVALID_ARGUMENT;
    case dqlab::ErrorCode::kInvalidConfig: return DQLAB_ERR_INVALID_CONFIG;
    case dqlab::ErrorCode::kDomain: return DQLAB_ERR_DOMAIN;
    case dqlab::ErrorCode::kNumeric: return DQLAB_ERR_NUMERIC;
    case dqlab::ErrorCode::kShape: return DQLAB_ERR_SHAPE;
    case dqlab::ErrorCode::kPrecondition: return DQLAB_ERR_PRECONDITION;
    case dqlab::ErrorCode::kParse: return DQLAB_ERR_PARSE;
    case dqlab::ErrorCode::kDegenerate: return DQLAB_ERR_DEGENERATE;
    case dqlab::ErrorCode::kIo: return DQLAB_ERR_IO;
  }
  return DQLAB_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's message.
template <typename Fn>
dqlab_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return DQLAB_OK;
  } catch (const dqlab::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DQLAB_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DQLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return DQLAB_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  dqlab::check(ok, dqlab::ErrorCode::kInvalidInput, what);
}

void require_capacity(std::size_t capacity, std::size_t needed) {
  dqlab::check(capacity >= needed, dqlab::ErrorCode::kShape,
               "output buffer holds " + std::to_string(capacity) +
                   " values, need " + std::to_string(needed));
}

dqlab::NoiseKind to_noise(int noise) {
  require(noise == DQLAB_NOISE_NORMAL || noise == DQLAB_NOISE_UNIFORM,
          "unknown noise kind");
  return noise == DQLAB_NOISE_NORMAL ? dqlab::NoiseKind::kStandardNormal
                                     : dqlab::NoiseKind::kUniform;
}

dqlab::AgentConfig to_agent_config(const dqlab_agent_config& c) {
  auto count = [](int64_t v, const char* name) {
    dqlab::check(v >= 0, dqlab::ErrorCode::kInvalidConfig,
                 std::string("agent config: ") + name + " must be >= 0");
    return static_cast<std::size_t>(v);
  };
  dqlab::check(c.hidden_layer_count <= DQLAB_MAX_HIDDEN_LAYERS,
               dqlab::ErrorCode::kInvalidConfig,
               "agent config: too many hidden layers");
  dqlab::AgentConfig cfg;
  cfg.gamma = c.gamma;
  cfg.learning_rate = c.learning_rate;
  cfg.rmsprop_decay = c.rmsprop_decay;
  cfg.rmsprop_damping = c.rmsprop_damping;
  cfg.target_sync_period = c.target_sync_period;
  cfg.replay_capacity = count(c.replay_capacity, "replay_capacity");
  cfg.minibatch_size = count(c.minibatch_size, "minibatch_size");
  cfg.update_every = c.update_every;
  cfg.replay_start = count(c.replay_start, "replay_start");
  cfg.epsilon_start = c.epsilon_start;
  cfg.epsilon_end = c.epsilon_end;
  cfg.epsilon_anneal_steps = c.epsilon_anneal_steps;
  cfg.eval_epsilon = c.eval_epsilon;
  cfg.shared_output_bias = c.shared_output_bias != 0;
  cfg.clip_rewards = c.clip_rewards != 0;
  cfg.clip_error = c.clip_error != 0;
  cfg.hidden_layers.assign(c.hidden_layers,
                           c.hidden_layers + c.hidden_layer_count);
  cfg.eval_interval = c.eval_interval;
  cfg.eval_steps = c.eval_steps;
  cfg.max_episode_steps = c.max_episode_steps;
  cfg.checkpoint_dir = c.checkpoint_dir ? c.checkpoint_dir : "";
  cfg.checkpoint_every = c.checkpoint_every;
  return cfg;
}

}  // namespace

extern "C" {

const char* dqlab_version(void) { return "0.1.0"; }

const char* dqlab_status_name(dqlab_status status) {
  switch (status) {
    case DQLAB_OK: return "ok";
    case DQLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DQLAB_ERR_INVALID_CONFIG: return "invalid config";
    case DQLAB_ERR_DOMAIN: return "domain error";
    case DQLAB_ERR_NUMERIC: return "numeric error";
    case DQLAB_ERR_SHAPE: return "shape mismatch";
    case DQLAB_ERR_PRECONDITION: return "precondition failed";
    case DQLAB_ERR_PARSE: return "parse error";
    case DQLAB_ERR_DEGENERATE: return "degenerate input";
    case DQLAB_ERR_IO: return "i/o error";
    case DQLAB_ERR_OUT_OF_MEMORY: return "out of memory";
    case DQLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dqlab_last_error_message(void) { return last_error.c_str(); }

dqlab_status dqlab_argmax(const double* values, size_t count,
                          size_t* out_index) {
  return guarded([&] {
    require(out_index != nullptr, "out_index is NULL");
    require(values != nullptr || count == 0, "values is NULL");
    *out_index = dqlab::argmax_tiebreak({values, count});
  });
}

void dqlab_env_params_init(dqlab_env_params* params) {
  if (params == nullptr) return;
  const dqlab::EnvParams d;
  params->kind = DQLAB_ENV_NOISY_TERMINAL;
  params->actions = d.actions;
  params->gamma = d.gamma;
  params->mu = nullptr;
  params->mu_count = 0;
  params->lead_in = d.lead_in;
  params->sigma = d.sigma;
  params->length = d.length;
  params->step_reward = d.step_reward;
  params->goal_reward = d.goal_reward;
}

dqlab_status dqlab_env_kind_from_name(const char* name, int* out_kind) {
  return guarded([&] {
    require(name != nullptr && out_kind != nullptr, "NULL argument");
    const auto kind = dqlab::parse_env_kind(name);
    require(kind.has_value(), "unknown environment kind");
    *out_kind = static_cast<int>(*kind);
  });
}

dqlab_status dqlab_env_create(const dqlab_env_params* params,
                              dqlab_env** out_env) {
  return guarded([&] {
    require(params != nullptr && out_env != nullptr, "NULL argument");
    require(params->kind >= DQLAB_ENV_NOISY_TERMINAL &&
                params->kind <= DQLAB_ENV_NOISY_CHAIN,
            "unknown environment kind");
    require(params->mu != nullptr || params->mu_count == 0, "mu is NULL");
    dqlab::EnvParams p;
    p.kind = static_cast<dqlab::EnvKind>(params->kind);
    p.actions = params->actions;
    p.gamma = params->gamma;
    if (params->mu_count > 0) {
      p.mu.assign(params->mu, params->mu + params->mu_count);
    }
    p.lead_in = params->lead_in;
    p.sigma = params->sigma;
    p.length = params->length;
    p.step_reward = params->step_reward;
    p.goal_reward = params->goal_reward;
    *out_env = new dqlab_env{dqlab::make_env(p)};
  });
}

void dqlab_env_destroy(dqlab_env* env) { delete env; }

dqlab_status dqlab_env_info(const dqlab_env* env, int* out_states,
                            int* out_actions, int* out_initial_state) {
  return guarded([&] {
    require(env != nullptr, "env is NULL");
    if (out_states) *out_states = env->model.state_count();
    if (out_actions) *out_actions = env->model.action_count();
    if (out_initial_state) *out_initial_state = env->model.initial_state();
  });
}

dqlab_status dqlab_env_optimal_values(const dqlab_env* env, double* out_values,
                                      size_t capacity) {
  return guarded([&] {
    require(env != nullptr && out_values != nullptr, "NULL argument");
    const dqlab::ValueTable q = dqlab::true_optimal_values(env->model);
    require_capacity(capacity, q.data().size());
    std::copy(q.data().begin(), q.data().end(), out_values);
  });
}

dqlab_status dqlab_theorem1_lower_bound(double c, int m, double* out_bound) {
  return guarded([&] {
    require(out_bound != nullptr, "out_bound is NULL");
    *out_bound = dqlab::theorem1_lower_bound(c, m);
  });
}

dqlab_status dqlab_theorem1_tight_construction(double c, int m,
                                               double* out_errors,
                                               size_t capacity) {
  return guarded([&] {
    require(out_errors != nullptr, "out_errors is NULL");
    const auto e = dqlab::theorem1_tight_construction(c, m);
    require_capacity(capacity, e.errors.size());
    std::copy(e.errors.begin(), e.errors.end(), out_errors);
  });
}

dqlab_status dqlab_uniform_overoptimism(int m, double* out_value) {
  return guarded([&] {
    require(out_value != nullptr, "out_value is NULL");
    *out_value = dqlab::uniform_error_overoptimism(m);
  });
}

dqlab_status dqlab_uniform_max_cdf(double x, int m, double* out_value) {
  return guarded([&] {
    require(out_value != nullptr, "out_value is NULL");
    *out_value = dqlab::uniform_max_cdf(x, m);
  });
}

dqlab_status dqlab_thrun_schwartz_bound(double gamma, double eps, int m,
                                        double* out_value) {
  return guarded([&] {
    require(out_value != nullptr, "out_value is NULL");
    *out_value = dqlab::thrun_schwartz_upper_bound(gamma, eps, m);
  });
}

dqlab_status dqlab_monte_carlo_bias(int estimator, int noise, int m,
                                    int64_t repetitions, uint64_t seed,
                                    dqlab_bias_estimate* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(estimator == DQLAB_ESTIMATOR_SINGLE ||
                estimator == DQLAB_ESTIMATOR_DOUBLE,
            "unknown estimator");
    require(m >= 1, "m must be >= 1");
    const dqlab::NoiseKind kind = to_noise(noise);
    dqlab::Rng rng = dqlab::Rng::for_stream(
        seed, dqlab::Stream::kMonteCarlo,
        2 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(estimator));
    const dqlab::BiasEstimate b =
        estimator == DQLAB_ESTIMATOR_SINGLE
            ? dqlab::monte_carlo_single_max_bias(kind, m, repetitions, rng)
            : dqlab::monte_carlo_double_bias(kind, m, repetitions, rng);
    *out = {b.mean, b.standard_error, b.repetitions};
  });
}

dqlab_status dqlab_polyfit_sample_states(int action, int* out_states,
                                         size_t capacity, size_t* out_count) {
  return guarded([&] {
    const auto states = dqlab::sample_states_for_action(action);
    if (out_states != nullptr) {
      require_capacity(capacity, states.size());
      std::copy(states.begin(), states.end(), out_states);
    }
    if (out_count) *out_count = states.size();
  });
}

dqlab_status dqlab_polyfit_default_grid(double* out_grid, size_t capacity,
                                        size_t* out_count) {
  return guarded([&] {
    const auto grid = dqlab::default_grid();
    if (out_grid != nullptr) {
      require_capacity(capacity, grid.size());
      std::copy(grid.begin(), grid.end(), out_grid);
    }
    if (out_count) *out_count = grid.size();
  });
}

dqlab_status dqlab_polyfit_curve(int true_value, int degree,
                                 const double* grid, size_t grid_count,
                                 dqlab_curve_point* out_points) {
  return guarded([&] {
    require(grid != nullptr && out_points != nullptr, "NULL argument");
    require(true_value == DQLAB_TRUE_SINE || true_value == DQLAB_TRUE_BUMP,
            "unknown true value function");
    const auto kind = true_value == DQLAB_TRUE_SINE
                          ? dqlab::TrueValueKind::kSine
                          : dqlab::TrueValueKind::kGaussianBump;
    const auto points = dqlab::bias_curves(kind, degree, {grid, grid_count});
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      dqlab_curve_point& o = out_points[i];
      o.s = p.s;
      o.v_true = p.v_true;
      std::copy(p.estimates.begin(), p.estimates.end(), o.estimates);
      o.q_max = p.q_max;
      o.single_bias = p.single_bias;
      o.double_bias = p.double_bias;
    }
  });
}

void dqlab_tabular_config_init(dqlab_tabular_config* config) {
  if (config == nullptr) return;
  const dqlab::TabularSchedule d;
  config->episodes = d.episodes;
  config->alpha = d.alpha;
  config->alpha_decay = d.alpha_decay;
  config->epsilon_start = d.epsilon_start;
  config->epsilon_end = d.epsilon_end;
  config->epsilon_anneal_episodes = d.epsilon_anneal_episodes;
  config->initial_value = d.initial_value;
  config->max_episode_steps = d.max_episode_steps;
}

dqlab_status dqlab_tabular_train(const dqlab_env* env, int algo,
                                 const dqlab_tabular_config* config,
                                 uint64_t seed, dqlab_tabular_run** out_run) {
  return guarded([&] {
    require(env != nullptr && config != nullptr && out_run != nullptr,
            "NULL argument");
    require(algo == DQLAB_TABULAR_Q || algo == DQLAB_TABULAR_DOUBLE_Q,
            "unknown tabular algorithm");
    dqlab::TabularSchedule s;
    s.episodes = config->episodes;
    s.alpha = config->alpha;
    s.alpha_decay = config->alpha_decay;
    s.epsilon_start = config->epsilon_start;
    s.epsilon_end = config->epsilon_end;
    s.epsilon_anneal_episodes = config->epsilon_anneal_episodes;
    s.initial_value = config->initial_value;
    s.max_episode_steps = config->max_episode_steps;
    const auto a = algo == DQLAB_TABULAR_Q ? dqlab::TabularAlgo::kQ
                                           : dqlab::TabularAlgo::kDoubleQ;
    *out_run = new dqlab_tabular_run{dqlab::train_tabular(env->model, a, s, seed)};
  });
}

void dqlab_tabular_run_destroy(dqlab_tabular_run* run) { delete run; }

size_t dqlab_tabular_run_row_count(const dqlab_tabular_run* run) {
  return run ? run->run.trace.size() : 0;
}

dqlab_status dqlab_tabular_run_row(const dqlab_tabular_run* run, size_t index,
                                   dqlab_tabular_row* out_row) {
  return guarded([&] {
    require(run != nullptr && out_row != nullptr, "NULL argument");
    require(index < run->run.trace.size(), "row index out of range");
    const auto& r = run->run.trace[index];
    *out_row = {r.episode, r.start_value_estimate, r.greedy_return};
  });
}

dqlab_status dqlab_mlp_create(const int* layer_sizes, size_t layer_count,
                              int shared_output_bias, uint64_t seed,
                              dqlab_mlp** out_mlp) {
  return guarded([&] {
    require(layer_sizes != nullptr && out_mlp != nullptr, "NULL argument");
    dqlab::Rng rng = dqlab::Rng::for_stream(seed, dqlab::Stream::kWeightInit);
    std::vector<int> sizes(layer_sizes, layer_sizes + layer_count);
    *out_mlp = new dqlab_mlp{
        dqlab::init_weights(std::move(sizes), shared_output_bias != 0, rng)};
  });
}

dqlab_status dqlab_mlp_load(const char* path, dqlab_mlp** out_mlp) {
  return guarded([&] {
    require(path != nullptr && out_mlp != nullptr, "NULL argument");
    *out_mlp = new dqlab_mlp{dqlab::load_checkpoint(path)};
  });
}

dqlab_status dqlab_mlp_save(const dqlab_mlp* mlp, const char* path) {
  return guarded([&] {
    require(mlp != nullptr && path != nullptr, "NULL argument");
    dqlab::save_checkpoint(mlp->params, path);
  });
}

void dqlab_mlp_destroy(dqlab_mlp* mlp) { delete mlp; }

dqlab_status dqlab_mlp_shape(const dqlab_mlp* mlp, size_t* out_inputs,
                             size_t* out_outputs, size_t* out_parameters) {
  return guarded([&] {
    require(mlp != nullptr, "mlp is NULL");
    if (out_inputs) *out_inputs = mlp->params.input_size();
    if (out_outputs) *out_outputs = mlp->params.output_size();
    if (out_parameters) *out_parameters = mlp->params.parameter_count();
  });
}

dqlab_status dqlab_mlp_get_parameters(const dqlab_mlp* mlp, double* out,
                                      size_t count) {
  return guarded([&] {
    require(mlp != nullptr && out != nullptr, "NULL argument");
    const auto flat = mlp->params.flat();
    require_capacity(count, flat.size());
    std::copy(flat.begin(), flat.end(), out);
  });
}

dqlab_status dqlab_mlp_set_parameters(dqlab_mlp* mlp, const double* values,
                                      size_t count) {
  return guarded([&] {
    require(mlp != nullptr && values != nullptr, "NULL argument");
    auto flat = mlp->params.flat();
    dqlab::check(count == flat.size(), dqlab::ErrorCode::kShape,
                 "parameter count mismatch");
    std::copy(values, values + count, flat.begin());
  });
}

dqlab_status dqlab_mlp_forward(const dqlab_mlp* mlp, const double* input,
                               size_t inputs, double* out_values,
                               size_t outputs) {
  return guarded([&] {
    require(mlp != nullptr && input != nullptr && out_values != nullptr,
            "NULL argument");
    const auto q = dqlab::forward(mlp->params, {input, inputs});
    require_capacity(outputs, q.size());
    std::copy(q.begin(), q.end(), out_values);
  });
}

dqlab_status dqlab_mlp_backward(const dqlab_mlp* mlp, const double* input,
                                size_t inputs, const double* output_grad,
                                size_t outputs, double* out_grads,
                                size_t parameters) {
  return guarded([&] {
    require(mlp != nullptr && input != nullptr && output_grad != nullptr &&
                out_grads != nullptr,
            "NULL argument");
    const auto g =
        dqlab::backward(mlp->params, {input, inputs}, {output_grad, outputs});
    require_capacity(parameters, g.parameter_count());
    std::copy(g.flat().begin(), g.flat().end(), out_grads);
  });
}

dqlab_status dqlab_agent_config_init(dqlab_agent_config* config, int preset) {
  return guarded([&] {
    require(config != nullptr, "config is NULL");
    dqlab::AgentConfig c;
    switch (preset) {
      case DQLAB_PRESET_ATARI: c = dqlab::atari_agent_config(); break;
      case DQLAB_PRESET_TUNED: c = dqlab::tuned_agent_config(); break;
      case DQLAB_PRESET_DESK: c = dqlab::desk_agent_config(); break;
      default: require(false, "unknown preset");
    }
    require(c.hidden_layers.size() <= DQLAB_MAX_HIDDEN_LAYERS,
            "too many hidden layers");
    dqlab_agent_config& o = *config;
    std::memset(&o, 0, sizeof(o));
    o.gamma = c.gamma;
    o.learning_rate = c.learning_rate;
    o.rmsprop_decay = c.rmsprop_decay;
    o.rmsprop_damping = c.rmsprop_damping;
    o.target_sync_period = c.target_sync_period;
    o.replay_capacity = static_cast<int64_t>(c.replay_capacity);
    o.minibatch_size = static_cast<int64_t>(c.minibatch_size);
    o.update_every = c.update_every;
    o.replay_start = static_cast<int64_t>(c.replay_start);
    o.epsilon_start = c.epsilon_start;
    o.epsilon_end = c.epsilon_end;
    o.epsilon_anneal_steps = c.epsilon_anneal_steps;
    o.eval_epsilon = c.eval_epsilon;
    o.shared_output_bias = c.shared_output_bias;
    o.clip_rewards = c.clip_rewards;
    o.clip_error = c.clip_error;
    std::copy(c.hidden_layers.begin(), c.hidden_layers.end(), o.hidden_layers);
    o.hidden_layer_count = c.hidden_layers.size();
    o.eval_interval = c.eval_interval;
    o.eval_steps = c.eval_steps;
    o.max_episode_steps = c.max_episode_steps;
    o.checkpoint_dir = nullptr;
    o.checkpoint_every = c.checkpoint_every;
  });
}

dqlab_status dqlab_deep_train(const dqlab_env* env, int algo,
                              const dqlab_agent_config* config,
                              int64_t total_steps, uint64_t seed,
                              dqlab_deep_run** out_run) {
  return guarded([&] {
    require(env != nullptr && config != nullptr && out_run != nullptr,
            "NULL argument");
    require(algo == DQLAB_DEEP_DQN || algo == DQLAB_DEEP_DOUBLE_DQN,
            "unknown deep algorithm");
    const auto a = algo == DQLAB_DEEP_DQN ? dqlab::DeepAlgo::kDqn
                                          : dqlab::DeepAlgo::kDoubleDqn;
    *out_run = new dqlab_deep_run{dqlab::train_deep(
        env->model, a, to_agent_config(*config), total_steps, seed)};
  });
}

void dqlab_deep_run_destroy(dqlab_deep_run* run) { delete run; }

size_t dqlab_deep_run_row_count(const dqlab_deep_run* run) {
  return run ? run->run.trace.size() : 0;
}

dqlab_status dqlab_deep_run_row(const dqlab_deep_run* run, size_t index,
                                dqlab_deep_row* out_row) {
  return guarded([&] {
    require(run != nullptr && out_row != nullptr, "NULL argument");
    require(index < run->run.trace.size(), "row index out of range");
    const auto& r = run->run.trace[index];
    *out_row = {r.step,    r.value_estimate, r.greedy_return,
                r.epsilon, r.loss,           r.start_value};
  });
}

dqlab_status dqlab_deep_run_summary(const dqlab_deep_run* run,
                                    dqlab_deep_summary* out) {
  return guarded([&] {
    require(run != nullptr && out != nullptr, "NULL argument");
    *out = {run->run.start_value_estimate, run->run.greedy_return,
            run->run.updates};
  });
}

size_t dqlab_deep_run_checkpoint_count(const dqlab_deep_run* run) {
  return run ? run->run.checkpoints.size() : 0;
}

const char* dqlab_deep_run_checkpoint_path(const dqlab_deep_run* run,
                                           size_t index) {
  if (run == nullptr || index >= run->run.checkpoints.size()) return nullptr;
  return run->run.checkpoints[index].c_str();
}

dqlab_status dqlab_deep_run_online_network(const dqlab_deep_run* run,
                                           dqlab_mlp** out_mlp) {
  return guarded([&] {
    require(run != nullptr && out_mlp != nullptr, "NULL argument");
    *out_mlp = new dqlab_mlp{run->run.nets.online};
  });
}

dqlab_status dqlab_dqn_target(double reward, double gamma,
                              const double* target_next, size_t actions,
                              int terminal, double* out_target) {
  return guarded([&] {
    require(target_next != nullptr && out_target != nullptr, "NULL argument");
    *out_target =
        dqlab::dqn_target(reward, gamma, {target_next, actions}, terminal != 0);
  });
}

dqlab_status dqlab_double_dqn_target(double reward, double gamma,
                                     const double* online_next,
                                     const double* target_next, size_t actions,
                                     int terminal, double* out_target) {
  return guarded([&] {
    require(online_next != nullptr && target_next != nullptr &&
                out_target != nullptr,
            "NULL argument");
    *out_target = dqlab::double_dqn_target(reward, gamma, {online_next, actions},
                                           {target_next, actions},
                                           terminal != 0);
  });
}

dqlab_status dqlab_evaluate_value(const dqlab_env* env, const dqlab_mlp* mlp,
                                  int episodes, double epsilon,
                                  int max_episode_steps, uint64_t seed,
                                  dqlab_value_report* out) {
  return guarded([&] {
    require(env != nullptr && mlp != nullptr && out != nullptr,
            "NULL argument");
    dqlab::check(mlp->params.input_size() == env->model.feature_count() &&
                     mlp->params.output_size() == env->model.action_count(),
                 dqlab::ErrorCode::kShape,
                 "network shape does not match the environment");
    dqlab::check(epsilon >= 0.0 && epsilon <= 1.0,
                 dqlab::ErrorCode::kInvalidConfig,
                 "epsilon must lie in [0, 1]");
    dqlab::Rng rng = dqlab::Rng::for_stream(seed, dqlab::Stream::kEvaluation);
    const auto r = dqlab::evaluate_value_accuracy(
        env->model, mlp->params, episodes, env->model.gamma(), epsilon, rng,
        max_episode_steps);
    *out = {r.value_estimate,       r.truth.mean_return,
            r.truth.start_state_return, r.truth.visited_states,
            r.truth.episodes,       r.truth.truncated_episodes};
  });
}

dqlab_status dqlab_normalize_score(double random, double human, double agent,
                                   double* out_value) {
  return guarded([&] {
    require(out_value != nullptr, "out_value is NULL");
    *out_value = dqlab::normalize_score(random, human, agent);
  });
}

dqlab_status dqlab_summarize(const double* values, size_t count,
                             dqlab_score_summary* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(values != nullptr || count == 0, "values is NULL");
    const auto s = dqlab::summarize({values, count});
    *out = {s.median, s.mean, s.count};
  });
}

dqlab_status dqlab_score_table_load(const char* path,
                                    dqlab_score_table** out_table) {
  return guarded([&] {
    require(path != nullptr && out_table != nullptr, "NULL argument");
    *out_table = new dqlab_score_table{dqlab::load_score_table(path)};
  });
}

void dqlab_score_table_destroy(dqlab_score_table* table) { delete table; }

size_t dqlab_score_table_game_count(const dqlab_score_table* table) {
  return table ? table->table.records.size() : 0;
}

size_t dqlab_score_table_agent_count(const dqlab_score_table* table) {
  return table ? table->table.agent_names.size() : 0;
}

const char* dqlab_score_table_game(const dqlab_score_table* table,
                                   size_t game) {
  if (table == nullptr || game >= table->table.records.size()) return nullptr;
  return table->table.records[game].game.c_str();
}

const char* dqlab_score_table_agent(const dqlab_score_table* table,
                                    size_t agent) {
  if (table == nullptr || agent >= table->table.agent_names.size()) {
    return nullptr;
  }
  return table->table.agent_names[agent].c_str();
}

dqlab_status dqlab_score_table_agent_index(const dqlab_score_table* table,
                                           const char* name,
                                           size_t* out_agent) {
  return guarded([&] {
    require(table != nullptr && name != nullptr && out_agent != nullptr,
            "NULL argument");
    const auto index = table->table.agent_index(name);
    require(index.has_value(), "unknown agent column");
    *out_agent = *index;
  });
}

dqlab_status dqlab_score_table_normalized(const dqlab_score_table* table,
                                          size_t game, size_t agent,
                                          double* out_value, int* out_present) {
  return guarded([&] {
    require(table != nullptr && out_value != nullptr && out_present != nullptr,
            "NULL argument");
    require(game < table->table.records.size(), "game index out of range");
    require(agent < table->table.agent_names.size(), "agent index out of range");
    const auto& rec = table->table.records[game];
    const auto& cell = rec.agents[agent];
    if (cell) {
      *out_value = dqlab::normalize_score(rec.random, rec.human, *cell);
    }
    *out_present = cell ? 1 : 0;
  });
}

dqlab_status dqlab_score_table_summarize(const dqlab_score_table* table,
                                         size_t agent, int64_t subset_agent,
                                         dqlab_score_summary* out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "NULL argument");
    const auto& t = table->table;
    require(agent < t.agent_names.size(), "agent index out of range");
    require(subset_agent < static_cast<int64_t>(t.agent_names.size()),
            "subset agent index out of range");
    std::vector<double> values;
    for (const auto& rec : t.records) {
      if (!rec.agents[agent]) continue;
      if (subset_agent >= 0 && !rec.agents[subset_agent]) continue;
      values.push_back(
          dqlab::normalize_score(rec.random, rec.human, *rec.agents[agent]));
    }
    const auto s = dqlab::summarize(values);
    *out = {s.median, s.mean, s.count};
  });
}

}  // extern "C"

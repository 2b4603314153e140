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

/* C interface to dqlab. Objects are opaque handles created and destroyed
 * through this header; every fallible call returns a dqlab_status and leaves
 * a description in dqlab_last_error_message(). Output arguments are written
 * only on DQLAB_OK. */

#ifndef DQLAB_DQLAB_H_
#define DQLAB_DQLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DQLAB_BUILDING_LIBRARY)
#define DQLAB_API __attribute__((visibility("default")))
#else
#define DQLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DQLAB_OK = 0,
  DQLAB_ERR_INVALID_ARGUMENT = 1,
  DQLAB_ERR_INVALID_CONFIG = 2,
  DQLAB_ERR_DOMAIN = 3,
  DQLAB_ERR_NUMERIC = 4,
  DQLAB_ERR_SHAPE = 5,
  DQLAB_ERR_PRECONDITION = 6,
  DQLAB_ERR_PARSE = 7,
  DQLAB_ERR_DEGENERATE = 8,
  DQLAB_ERR_IO = 9,
  DQLAB_ERR_OUT_OF_MEMORY = 10,
  DQLAB_ERR_INTERNAL = 11
} dqlab_status;

DQLAB_API const char* dqlab_version(void);
DQLAB_API const char* dqlab_status_name(dqlab_status status);
/* Message of the last failed call on this thread; "" if none. */
DQLAB_API const char* dqlab_last_error_message(void);

/* Index of the largest value, lowest index on ties. */
DQLAB_API dqlab_status dqlab_argmax(const double* values, size_t count,
                                    size_t* out_index);

/* ---- Environments ---- */

typedef enum {
  DQLAB_ENV_NOISY_TERMINAL = 0,
  DQLAB_ENV_CHAIN = 1,
  DQLAB_ENV_NOISY_CHAIN = 2
} dqlab_env_kind;

typedef struct {
  int kind; /* dqlab_env_kind */
  int actions;
  double gamma;
  /* Per-action reward means of the noisy terminal state; NULL means zeros. */
  const double* mu;
  size_t mu_count;
  int lead_in;
  double sigma;
  int length;
  double step_reward;
  double goal_reward;
} dqlab_env_params;

typedef struct dqlab_env dqlab_env;

DQLAB_API void dqlab_env_params_init(dqlab_env_params* params);
/* "noisy-terminal", "chain" or "noisy-chain". */
DQLAB_API dqlab_status dqlab_env_kind_from_name(const char* name, int* out_kind);
DQLAB_API dqlab_status dqlab_env_create(const dqlab_env_params* params,
                                        dqlab_env** out_env);
DQLAB_API void dqlab_env_destroy(dqlab_env* env);
DQLAB_API dqlab_status dqlab_env_info(const dqlab_env* env, int* out_states,
                                      int* out_actions, int* out_initial_state);
/* Q* row-major by state; capacity must be at least states * actions. */
DQLAB_API dqlab_status dqlab_env_optimal_values(const dqlab_env* env,
                                                double* out_values,
                                                size_t capacity);

/* ---- Estimator bias ---- */

typedef enum { DQLAB_NOISE_NORMAL = 0, DQLAB_NOISE_UNIFORM = 1 } dqlab_noise;
typedef enum {
  DQLAB_ESTIMATOR_SINGLE = 0,
  DQLAB_ESTIMATOR_DOUBLE = 1
} dqlab_estimator;

typedef struct {
  double mean;
  double standard_error;
  int64_t repetitions;
} dqlab_bias_estimate;

DQLAB_API dqlab_status dqlab_theorem1_lower_bound(double c, int m,
                                                  double* out_bound);
/* Writes the m errors of the tight construction. */
DQLAB_API dqlab_status dqlab_theorem1_tight_construction(double c, int m,
                                                         double* out_errors,
                                                         size_t capacity);
DQLAB_API dqlab_status dqlab_uniform_overoptimism(int m, double* out_value);
DQLAB_API dqlab_status dqlab_uniform_max_cdf(double x, int m,
                                             double* out_value);
DQLAB_API dqlab_status dqlab_thrun_schwartz_bound(double gamma, double eps,
                                                  int m, double* out_value);
/* Monte Carlo bias of the single or double estimator over m zero-mean noisy
 * estimates. The random stream depends on (seed, estimator, m) only. */
DQLAB_API dqlab_status dqlab_monte_carlo_bias(int estimator, int noise, int m,
                                              int64_t repetitions,
                                              uint64_t seed,
                                              dqlab_bias_estimate* out);

/* ---- Polynomial fits ---- */

typedef enum { DQLAB_TRUE_SINE = 0, DQLAB_TRUE_BUMP = 1 } dqlab_true_value;

#define DQLAB_POLYFIT_ACTIONS 10

typedef struct {
  double s;
  double v_true;
  double estimates[DQLAB_POLYFIT_ACTIONS];
  double q_max;
  double single_bias;
  double double_bias;
} dqlab_curve_point;

/* Integer states sampled for a 1-based action. With out_states NULL only
 * the count is reported. */
DQLAB_API dqlab_status dqlab_polyfit_sample_states(int action, int* out_states,
                                                   size_t capacity,
                                                   size_t* out_count);
/* The 601-point evaluation grid; same NULL convention. */
DQLAB_API dqlab_status dqlab_polyfit_default_grid(double* out_grid,
                                                  size_t capacity,
                                                  size_t* out_count);
DQLAB_API dqlab_status dqlab_polyfit_curve(int true_value, int degree,
                                           const double* grid,
                                           size_t grid_count,
                                           dqlab_curve_point* out_points);

/* ---- Tabular learning ---- */

typedef enum { DQLAB_TABULAR_Q = 0, DQLAB_TABULAR_DOUBLE_Q = 1 } dqlab_tabular_algo;

typedef struct {
  int episodes;
  double alpha;
  double alpha_decay;
  double epsilon_start;
  double epsilon_end;
  int epsilon_anneal_episodes;
  double initial_value;
  int max_episode_steps;
} dqlab_tabular_config;

typedef struct {
  int episode;
  double start_value_estimate;
  double greedy_return;
} dqlab_tabular_row;

typedef struct dqlab_tabular_run dqlab_tabular_run;

DQLAB_API void dqlab_tabular_config_init(dqlab_tabular_config* config);
DQLAB_API dqlab_status dqlab_tabular_train(const dqlab_env* env, int algo,
                                           const dqlab_tabular_config* config,
                                           uint64_t seed,
                                           dqlab_tabular_run** out_run);
DQLAB_API void dqlab_tabular_run_destroy(dqlab_tabular_run* run);
DQLAB_API size_t dqlab_tabular_run_row_count(const dqlab_tabular_run* run);
DQLAB_API dqlab_status dqlab_tabular_run_row(const dqlab_tabular_run* run,
                                             size_t index,
                                             dqlab_tabular_row* out_row);

/* ---- Networks ---- */

typedef struct dqlab_mlp dqlab_mlp;

/* He-initialized network; layer_sizes runs from input to output. */
DQLAB_API dqlab_status dqlab_mlp_create(const int* layer_sizes,
                                        size_t layer_count,
                                        int shared_output_bias, uint64_t seed,
                                        dqlab_mlp** out_mlp);
DQLAB_API dqlab_status dqlab_mlp_load(const char* path, dqlab_mlp** out_mlp);
DQLAB_API dqlab_status dqlab_mlp_save(const dqlab_mlp* mlp, const char* path);
DQLAB_API void dqlab_mlp_destroy(dqlab_mlp* mlp);
DQLAB_API dqlab_status dqlab_mlp_shape(const dqlab_mlp* mlp,
                                       size_t* out_inputs, size_t* out_outputs,
                                       size_t* out_parameters);
DQLAB_API dqlab_status dqlab_mlp_get_parameters(const dqlab_mlp* mlp,
                                                double* out, size_t count);
DQLAB_API dqlab_status dqlab_mlp_set_parameters(dqlab_mlp* mlp,
                                                const double* values,
                                                size_t count);
DQLAB_API dqlab_status dqlab_mlp_forward(const dqlab_mlp* mlp,
                                         const double* input, size_t inputs,
                                         double* out_values, size_t outputs);
/* Gradient of sum_a output_grad[a] * Q_a(input) in parameter order. */
DQLAB_API dqlab_status dqlab_mlp_backward(const dqlab_mlp* mlp,
                                          const double* input, size_t inputs,
                                          const double* output_grad,
                                          size_t outputs, double* out_grads,
                                          size_t parameters);

/* ---- Deep agents ---- */

typedef enum {
  DQLAB_PRESET_ATARI = 0,
  DQLAB_PRESET_TUNED = 1,
  DQLAB_PRESET_DESK = 2
} dqlab_preset;

typedef enum { DQLAB_DEEP_DQN = 0, DQLAB_DEEP_DOUBLE_DQN = 1 } dqlab_deep_algo;

#define DQLAB_MAX_HIDDEN_LAYERS 8

typedef struct {
  double gamma;
  double learning_rate;
  double rmsprop_decay;
  double rmsprop_damping;
  int64_t target_sync_period;
  int64_t replay_capacity;
  int64_t minibatch_size;
  int64_t update_every;
  int64_t replay_start;
  double epsilon_start;
  double epsilon_end;
  int64_t epsilon_anneal_steps;
  double eval_epsilon;
  int shared_output_bias;
  int clip_rewards;
  int clip_error;
  int hidden_layers[DQLAB_MAX_HIDDEN_LAYERS];
  size_t hidden_layer_count;
  int64_t eval_interval;
  int64_t eval_steps;
  int max_episode_steps;
  /* NULL or "" disables checkpoints. Borrowed; copied by dqlab_deep_train. */
  const char* checkpoint_dir;
  int64_t checkpoint_every;
} dqlab_agent_config;

typedef struct {
  int64_t step;
  double value_estimate;
  double greedy_return;
  double epsilon;
  double loss; /* NaN before the first update */
  double start_value;
} dqlab_deep_row;

typedef struct {
  double start_value_estimate;
  double greedy_return;
  int64_t updates;
} dqlab_deep_summary;

typedef struct dqlab_deep_run dqlab_deep_run;

DQLAB_API dqlab_status dqlab_agent_config_init(dqlab_agent_config* config,
                                               int preset);
DQLAB_API dqlab_status dqlab_deep_train(const dqlab_env* env, int algo,
                                        const dqlab_agent_config* config,
                                        int64_t total_steps, uint64_t seed,
                                        dqlab_deep_run** out_run);
DQLAB_API void dqlab_deep_run_destroy(dqlab_deep_run* run);
DQLAB_API size_t dqlab_deep_run_row_count(const dqlab_deep_run* run);
DQLAB_API dqlab_status dqlab_deep_run_row(const dqlab_deep_run* run,
                                          size_t index, dqlab_deep_row* out_row);
DQLAB_API dqlab_status dqlab_deep_run_summary(const dqlab_deep_run* run,
                                              dqlab_deep_summary* out);
DQLAB_API size_t dqlab_deep_run_checkpoint_count(const dqlab_deep_run* run);
/* Borrowed string valid until the run is destroyed; NULL if out of range. */
DQLAB_API const char* dqlab_deep_run_checkpoint_path(const dqlab_deep_run* run,
                                                     size_t index);
/* A new handle holding a copy of the trained online network. */
DQLAB_API dqlab_status dqlab_deep_run_online_network(const dqlab_deep_run* run,
                                                     dqlab_mlp** out_mlp);

DQLAB_API dqlab_status dqlab_dqn_target(double reward, double gamma,
                                        const double* target_next,
                                        size_t actions, int terminal,
                                        double* out_target);
DQLAB_API dqlab_status dqlab_double_dqn_target(double reward, double gamma,
                                               const double* online_next,
                                               const double* target_next,
                                               size_t actions, int terminal,
                                               double* out_target);

/* ---- Value accuracy ---- */

typedef struct {
  double value_estimate;
  double mean_return;
  double start_state_return;
  int64_t visited_states;
  int episodes;
  int truncated_episodes;
} dqlab_value_report;

/* Epsilon-greedy rollouts of the network on the environment, discounted with
 * the environment's gamma. */
DQLAB_API dqlab_status dqlab_evaluate_value(const dqlab_env* env,
                                            const dqlab_mlp* mlp, int episodes,
                                            double epsilon,
                                            int max_episode_steps,
                                            uint64_t seed,
                                            dqlab_value_report* out);

/* ---- Score tables ---- */

typedef struct {
  double median;
  double mean;
  size_t count;
} dqlab_score_summary;

typedef struct dqlab_score_table dqlab_score_table;

/* Fraction, not percent. */
DQLAB_API dqlab_status dqlab_normalize_score(double random, double human,
                                             double agent, double* out_value);
DQLAB_API dqlab_status dqlab_summarize(const double* values, size_t count,
                                       dqlab_score_summary* out);
DQLAB_API dqlab_status dqlab_score_table_load(const char* path,
                                              dqlab_score_table** out_table);
DQLAB_API void dqlab_score_table_destroy(dqlab_score_table* table);
DQLAB_API size_t dqlab_score_table_game_count(const dqlab_score_table* table);
DQLAB_API size_t dqlab_score_table_agent_count(const dqlab_score_table* table);
/* Borrowed strings; NULL if out of range. */
DQLAB_API const char* dqlab_score_table_game(const dqlab_score_table* table,
                                             size_t game);
DQLAB_API const char* dqlab_score_table_agent(const dqlab_score_table* table,
                                              size_t agent);
DQLAB_API dqlab_status dqlab_score_table_agent_index(
    const dqlab_score_table* table, const char* name, size_t* out_agent);
/* *out_present is 0 for an empty cell, in which case *out_value is left
 * untouched. */
DQLAB_API dqlab_status dqlab_score_table_normalized(
    const dqlab_score_table* table, size_t game, size_t agent,
    double* out_value, int* out_present);
/* Summary of an agent's normalized scores. A non-negative subset_agent
 * restricts the games to those where that agent also has a score. */
DQLAB_API dqlab_status dqlab_score_table_summarize(
    const dqlab_score_table* table, size_t agent, int64_t subset_agent,
    dqlab_score_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* DQLAB_DQLAB_H_ */

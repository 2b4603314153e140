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

// Estimation-error analysis of the max operator. All quantities are errors
// eps_a = Q(s, a) - V*(s) for a state whose actions share one true value.

#ifndef DQLAB_BIAS_LAB_BIAS_LAB_H_
#define DQLAB_BIAS_LAB_BIAS_LAB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/rng.h"

namespace dqlab {

// Per-action errors together with the mean square C they were built for.
struct ErrorVector {
  std::vector<double> errors;
  double mean_square = 0.0;
};

struct BiasEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t repetitions = 0;
};

enum class NoiseKind { kStandardNormal, kUniform };

std::optional<NoiseKind> parse_noise_kind(const std::string& name);
std::string noise_kind_name(NoiseKind kind);

// sqrt(C / (m - 1)): the smallest possible max_a eps_a when the errors sum to
// zero and have mean square C.
double theorem1_lower_bound(double c, int m);

// m - 1 errors of sqrt(C/(m-1)) and one of -sqrt((m-1) C); attains the bound.
ErrorVector theorem1_tight_construction(double c, int m);

// True iff |sum eps| <= 1e-9 and |mean(eps^2) - C| <= 1e-9.
bool verify_error_constraints(const ErrorVector& e);

// Draws i.i.d. normals, centres them and rescales to mean square C. The
// (measure-zero) all-zero draw is rejected.
ErrorVector sample_constrained_errors(double c, int m, Rng& rng);

struct DoubleEstimateExample {
  // Errors of the first estimate: one action at +sqrt(C(m-1)/m), the rest at
  // -sqrt(C/(m(m-1))). Their sum of squares is C.
  ErrorVector first;
  // Errors of the second estimate: exact at a_1. The remaining entries are
  // unconstrained; they are set to 1 here to show they do not matter.
  std::vector<double> second;
  // second[argmax first], i.e. the double estimate minus V*.
  double double_error = 0.0;
};

// Witness that the double estimator can have zero error under the same
// constraints that force the single estimator up.
DoubleEstimateExample double_estimate_error_example(double c, int m);

// (m - 1) / (m + 1): expected max of m independent uniform[-1, 1] errors.
double uniform_error_overoptimism(int m);

// CDF of the max of m independent uniform[-1, 1] variables.
double uniform_max_cdf(double x, int m);

// gamma * eps * (m - 1) / (m + 1).
double thrun_schwartz_upper_bound(double gamma, double eps, int m);

double draw_noise(NoiseKind noise, Rng& rng);

// Mean and standard error of max_a eps_a over `reps` independent draws.
BiasEstimate monte_carlo_single_max_bias(NoiseKind noise, int m,
                                         std::int64_t reps, Rng& rng);

// Mean and standard error of eps'[argmax eps] with eps, eps' independent.
BiasEstimate monte_carlo_double_bias(NoiseKind noise, int m,
                                     std::int64_t reps, Rng& rng);

}  // namespace dqlab

#endif  // DQLAB_BIAS_LAB_BIAS_LAB_H_

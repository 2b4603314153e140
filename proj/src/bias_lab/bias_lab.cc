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

#include "bias_lab/bias_lab.h"

#include <cmath>
#include <numeric>

#include "core/argmax.h"
#include "core/error.h"

namespace dqlab {
namespace {

void check_bound_domain(double c, int m, const char* op) {
  check(c > 0.0 && std::isfinite(c), ErrorCode::kDomain,
        std::string(op) + ": C must be positive");
  check(m >= 2, ErrorCode::kDomain, std::string(op) + ": m must be >= 2");
}

// Welford accumulator for mean and sample variance.
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  BiasEstimate estimate() const {
    BiasEstimate out;
    out.mean = mean_;
    out.repetitions = n_;
    if (n_ > 1) {
      const double variance = m2_ / static_cast<double>(n_ - 1);
      out.standard_error = std::sqrt(variance / static_cast<double>(n_));
    }
    return out;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void check_mc_args(int m, std::int64_t reps) {
  check(m >= 1, ErrorCode::kDomain, "monte carlo: m must be >= 1");
  check(reps >= 1, ErrorCode::kDomain, "monte carlo: reps must be >= 1");
}

}  // namespace

std::optional<NoiseKind> parse_noise_kind(const std::string& name) {
  if (name == "standard-normal" || name == "normal") {
    return NoiseKind::kStandardNormal;
  }
  if (name == "uniform") return NoiseKind::kUniform;
  return std::nullopt;
}

std::string noise_kind_name(NoiseKind kind) {
  return kind == NoiseKind::kStandardNormal ? "standard-normal" : "uniform";
}

double theorem1_lower_bound(double c, int m) {
  check_bound_domain(c, m, "theorem1_lower_bound");
  return std::sqrt(c / (m - 1));
}

ErrorVector theorem1_tight_construction(double c, int m) {
  const double high = theorem1_lower_bound(c, m);
  ErrorVector e;
  e.mean_square = c;
  e.errors.assign(m - 1, high);
  e.errors.push_back(-std::sqrt((m - 1) * c));
  return e;
}

bool verify_error_constraints(const ErrorVector& e) {
  const auto m = e.errors.size();
  if (m < 2) return false;
  double sum = 0.0;
  double squares = 0.0;
  for (double x : e.errors) {
    sum += x;
    squares += x * x;
  }
  return std::abs(sum) <= 1e-9 &&
         std::abs(squares / static_cast<double>(m) - e.mean_square) <= 1e-9;
}

ErrorVector sample_constrained_errors(double c, int m, Rng& rng) {
  check_bound_domain(c, m, "sample_constrained_errors");
  ErrorVector e;
  e.mean_square = c;
  e.errors.resize(m);
  while (true) {
    for (double& x : e.errors) x = rng.normal();
    const double mean =
        std::accumulate(e.errors.begin(), e.errors.end(), 0.0) / m;
    double squares = 0.0;
    for (double& x : e.errors) {
      x -= mean;
      squares += x * x;
    }
    if (squares == 0.0) continue;
    const double scale = std::sqrt(c * m / squares);
    for (double& x : e.errors) x *= scale;
    return e;
  }
}

DoubleEstimateExample double_estimate_error_example(double c, int m) {
  check_bound_domain(c, m, "double_estimate_error_example");
  DoubleEstimateExample ex;
  // These errors have sum of squares C, so their mean square is C / m.
  ex.first.mean_square = c / static_cast<double>(m);
  ex.first.errors.assign(m, -std::sqrt(c / (static_cast<double>(m) * (m - 1))));
  ex.first.errors[0] = std::sqrt(c * (m - 1) / static_cast<double>(m));
  ex.second.assign(m, 1.0);
  ex.second[0] = 0.0;
  ex.double_error = ex.second[argmax_tiebreak(ex.first.errors)];
  return ex;
}

double uniform_error_overoptimism(int m) {
  check(m >= 1, ErrorCode::kDomain, "uniform_error_overoptimism: m must be >= 1");
  return static_cast<double>(m - 1) / static_cast<double>(m + 1);
}

double uniform_max_cdf(double x, int m) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::pow((1.0 + x) / 2.0, m);
}

double thrun_schwartz_upper_bound(double gamma, double eps, int m) {
  check(gamma >= 0.0 && gamma <= 1.0, ErrorCode::kDomain,
        "thrun_schwartz_upper_bound: gamma must lie in [0, 1]");
  check(eps >= 0.0, ErrorCode::kDomain,
        "thrun_schwartz_upper_bound: eps must be non-negative");
  return gamma * eps * uniform_error_overoptimism(m);
}

double draw_noise(NoiseKind noise, Rng& rng) {
  return noise == NoiseKind::kStandardNormal ? rng.normal()
                                             : rng.uniform(-1.0, 1.0);
}

BiasEstimate monte_carlo_single_max_bias(NoiseKind noise, int m,
                                         std::int64_t reps, Rng& rng) {
  check_mc_args(m, reps);
  RunningMoments moments;
  for (std::int64_t r = 0; r < reps; ++r) {
    double best = draw_noise(noise, rng);
    for (int a = 1; a < m; ++a) best = std::max(best, draw_noise(noise, rng));
    moments.add(best);
  }
  return moments.estimate();
}

BiasEstimate monte_carlo_double_bias(NoiseKind noise, int m,
                                     std::int64_t reps, Rng& rng) {
  check_mc_args(m, reps);
  RunningMoments moments;
  std::vector<double> first(m);
  std::vector<double> second(m);
  for (std::int64_t r = 0; r < reps; ++r) {
    for (double& x : first) x = draw_noise(noise, rng);
    for (double& x : second) x = draw_noise(noise, rng);
    moments.add(second[argmax_tiebreak(first)]);
  }
  return moments.estimate();
}

}  // namespace dqlab

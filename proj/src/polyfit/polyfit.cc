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

#include "polyfit/polyfit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "core/argmax.h"
#include "core/error.h"

namespace dqlab {
namespace {

constexpr double kRankThreshold = 1e-12;

double horner(std::span<const double> coefficients, double t) {
  double y = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    y = y * t + *it;
  }
  return y;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

std::optional<TrueValueKind> parse_true_value_kind(const std::string& name) {
  if (name == "sine") return TrueValueKind::kSine;
  if (name == "gaussian-bump" || name == "bump") {
    return TrueValueKind::kGaussianBump;
  }
  return std::nullopt;
}

std::string true_value_kind_name(TrueValueKind kind) {
  return kind == TrueValueKind::kSine ? "sine" : "gaussian-bump";
}

double true_value(TrueValueKind kind, double s) {
  return kind == TrueValueKind::kSine ? std::sin(s) : 2.0 * std::exp(-s * s);
}

std::vector<int> sample_states_for_action(int action) {
  check(action >= 1 && action <= kPolyfitActions, ErrorCode::kDomain,
        "sample_states_for_action: action must lie in 1..10");
  std::vector<int> states;
  for (int s = kPolyfitStateMin; s <= kPolyfitStateMax; ++s) {
    if (s != action - 6 && s != action - 5) states.push_back(s);
  }
  return states;
}

int double_partner(int action) {
  check(action >= 1 && action <= kPolyfitActions, ErrorCode::kDomain,
        "double_partner: action must lie in 1..10");
  return action <= 5 ? action + 5 : action - 5;
}

PolyEstimator::PolyEstimator(std::vector<double> scaled_coefficients,
                             double center, double half_width,
                             std::vector<double> sampled_states,
                             double residual_sum_of_squares, int action)
    : scaled_coefficients_(std::move(scaled_coefficients)),
      center_(center),
      half_width_(half_width),
      sampled_states_(std::move(sampled_states)),
      rss_(residual_sum_of_squares),
      action_(action) {}

double PolyEstimator::operator()(double s) const {
  return horner(scaled_coefficients_, (s - center_) / half_width_);
}

std::vector<double> PolyEstimator::coefficients() const {
  // sum_k b_k ((s - c) / h)^k expanded binomially into powers of s.
  const int d = degree();
  std::vector<double> out(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    const double bk = scaled_coefficients_[k] / std::pow(half_width_, k);
    for (int j = 0; j <= k; ++j) {
      out[j] += bk * binomial(k, j) * std::pow(-center_, k - j);
    }
  }
  return out;
}

PolyEstimator fit_polynomial(std::span<const double> states,
                             std::span<const double> targets, int degree,
                             int action) {
  check(degree >= 0, ErrorCode::kInvalidInput,
        "fit_polynomial: degree must be non-negative");
  check(states.size() == targets.size(), ErrorCode::kShape,
        "fit_polynomial: states and targets differ in length");
  check(states.size() >= static_cast<std::size_t>(degree) + 1,
        ErrorCode::kPrecondition,
        "fit_polynomial: need at least degree + 1 states for degree " +
            std::to_string(degree));
  std::vector<double> sorted(states.begin(), states.end());
  std::sort(sorted.begin(), sorted.end());
  check(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
        ErrorCode::kPrecondition, "fit_polynomial: states must be distinct");

  const double lo = sorted.front();
  const double hi = sorted.back();
  const double center = 0.5 * (lo + hi);
  const double half_width = hi > lo ? 0.5 * (hi - lo) : 1.0;

  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (states[i] - center) / half_width;
    double power = 1.0;
    for (int k = 0; k <= degree; ++k) {
      design(i, k) = power;
      power *= t;
    }
    y(i) = targets[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(kRankThreshold);
  check(qr.rank() == degree + 1, ErrorCode::kNumeric,
        "fit_polynomial: rank-deficient design for degree " +
            std::to_string(degree) + " (rank " + std::to_string(qr.rank()) +
            ")");
  const Eigen::VectorXd beta = qr.solve(y);
  const double rss = (design * beta - y).squaredNorm();
  return PolyEstimator(std::vector<double>(beta.data(), beta.data() + beta.size()),
                       center, half_width,
                       std::vector<double>(states.begin(), states.end()), rss,
                       action);
}

PolyEstimator fit_action(TrueValueKind kind, int degree, int action) {
  std::vector<double> states;
  std::vector<double> targets;
  for (int s : sample_states_for_action(action)) {
    states.push_back(s);
    targets.push_back(true_value(kind, s));
  }
  return fit_polynomial(states, targets, degree, action);
}

std::vector<double> default_grid() {
  constexpr int kIntervals = 600;
  std::vector<double> grid(kIntervals + 1);
  for (int k = 0; k <= kIntervals; ++k) {
    grid[k] = kPolyfitStateMin +
              static_cast<double>(kPolyfitStateMax - kPolyfitStateMin) * k /
                  kIntervals;
  }
  return grid;
}

std::vector<CurvePoint> bias_curves(TrueValueKind kind, int degree,
                                    std::span<const double> grid) {
  for (double s : grid) {
    check(s >= kPolyfitStateMin && s <= kPolyfitStateMax, ErrorCode::kDomain,
          "bias_curves: grid state " + std::to_string(s) +
              " outside [-6, 6]");
  }
  std::vector<PolyEstimator> fits;
  fits.reserve(kPolyfitActions);
  for (int i = 1; i <= kPolyfitActions; ++i) {
    fits.push_back(fit_action(kind, degree, i));
  }

  std::vector<CurvePoint> curve;
  curve.reserve(grid.size());
  for (double s : grid) {
    CurvePoint p;
    p.s = s;
    p.v_true = true_value(kind, s);
    for (int i = 0; i < kPolyfitActions; ++i) p.estimates[i] = fits[i](s);
    const std::size_t best = argmax_tiebreak(p.estimates);
    const int partner = double_partner(static_cast<int>(best) + 1) - 1;
    p.q_max = p.estimates[best];
    p.single_bias = p.q_max - p.v_true;
    p.double_bias = p.estimates[partner] - p.v_true;
    curve.push_back(p);
  }
  return curve;
}

std::array<PolyfitRow, 3> polyfit_rows() {
  return {PolyfitRow{1, TrueValueKind::kSine, 6},
          PolyfitRow{2, TrueValueKind::kGaussianBump, 6},
          PolyfitRow{3, TrueValueKind::kGaussianBump, 9}};
}

}  // namespace dqlab

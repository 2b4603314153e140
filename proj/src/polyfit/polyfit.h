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

// Overestimation from function approximation on a continuous state space with
// ten actions that all share one true value. Each action's estimate is a
// least-squares polynomial fit to the true value on its own subset of the
// integer states -6..6.

#ifndef DQLAB_POLYFIT_POLYFIT_H_
#define DQLAB_POLYFIT_POLYFIT_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dqlab {

inline constexpr int kPolyfitActions = 10;
inline constexpr int kPolyfitStateMin = -6;
inline constexpr int kPolyfitStateMax = 6;

enum class TrueValueKind { kSine, kGaussianBump };

std::optional<TrueValueKind> parse_true_value_kind(const std::string& name);
std::string true_value_kind_name(TrueValueKind kind);

// sin(s) or 2 exp(-s^2).
double true_value(TrueValueKind kind, double s);

// Integer states -6..6 without {i - 6, i - 5}; i is the 1-based action.
std::vector<int> sample_states_for_action(int action);

// 1-based action whose samples serve as the second estimate for `action`:
// i + 5 for i <= 5, i - 5 otherwise.
int double_partner(int action);

// Least-squares polynomial. Internally the fit is done in t = (s - c) / h,
// where [c - h, c + h] spans the sampled states, so the monomial basis stays
// well conditioned for high degrees.
class PolyEstimator {
 public:
  PolyEstimator(std::vector<double> scaled_coefficients, double center,
                double half_width, std::vector<double> sampled_states,
                double residual_sum_of_squares, int action);

  double operator()(double s) const;

  int degree() const {
    return static_cast<int>(scaled_coefficients_.size()) - 1;
  }
  int action() const { return action_; }
  std::span<const double> sampled_states() const { return sampled_states_; }
  double residual_sum_of_squares() const { return rss_; }

  // Coefficients c_k of sum_k c_k s^k in the original variable.
  std::vector<double> coefficients() const;

 private:
  std::vector<double> scaled_coefficients_;
  double center_;
  double half_width_;
  std::vector<double> sampled_states_;
  double rss_;
  int action_;
};

// Fails with a precondition error when there are fewer than degree + 1 states
// or duplicates, and with a numeric error when the design is rank deficient.
PolyEstimator fit_polynomial(std::span<const double> states,
                             std::span<const double> targets, int degree,
                             int action = 0);

// Fit of action i (1-based) to the true value on its sampled states.
PolyEstimator fit_action(TrueValueKind kind, int degree, int action);

struct CurvePoint {
  double s = 0.0;
  double v_true = 0.0;
  std::array<double, kPolyfitActions> estimates{};
  double q_max = 0.0;
  double single_bias = 0.0;
  double double_bias = 0.0;
};

// 601 evenly spaced states on [-6, 6].
std::vector<double> default_grid();

// Per grid state: max over the ten estimates minus V*, and the partner
// estimate at the argmax minus V*. No randomness is involved.
std::vector<CurvePoint> bias_curves(TrueValueKind kind, int degree,
                                    std::span<const double> grid);

// The three standard configurations: sine/6, bump/6, bump/9.
struct PolyfitRow {
  int row;
  TrueValueKind kind;
  int degree;
};
std::array<PolyfitRow, 3> polyfit_rows();

}  // namespace dqlab

#endif  // DQLAB_POLYFIT_POLYFIT_H_

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

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/argmax.h"
#include "core/error.h"
#include "doctest.h"
#include "polyfit/polyfit.h"

namespace dqlab {
namespace {

using doctest::Approx;

// Least squares in the basis (s/6)^k by normal equations in long double with
// partial pivoting. Fine for the small, well-scaled systems used here.
std::vector<long double> oracle_fit(const std::vector<double>& s,
                                    const std::vector<double>& y, int d) {
  const int n = d + 1;
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<long double> row(n);
    for (int k = 0; k < n; ++k) row[k] = std::pow((long double)s[i] / 6.0L, k);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a[r][c] += row[r] * row[c];
      a[r][n] += row[r] * y[i];
    }
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<long double> coef(n);
  for (int k = 0; k < n; ++k) coef[k] = a[k][n] / a[k][k];
  return coef;
}

long double oracle_eval(const std::vector<long double>& c, double s) {
  long double v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * (s / 6.0L) + c[k];
  return v;
}

TEST_CASE("sampled states drop two neighbours") {
  auto expect = [](int action, int a, int b) {
    std::vector<int> want;
    for (int s = -6; s <= 6; ++s) {
      if (s != a && s != b) want.push_back(s);
    }
    CHECK(sample_states_for_action(action) == want);
  };
  expect(1, -5, -4);
  expect(2, -4, -3);
  expect(10, 4, 5);
  for (int i = 1; i <= 10; ++i) {
    const auto st = sample_states_for_action(i);
    CHECK(st.size() == 11);
    CHECK(st.front() == -6);
    CHECK(st.back() == 6);
  }
  CHECK_THROWS_AS(sample_states_for_action(0), Error);
  CHECK_THROWS_AS(sample_states_for_action(11), Error);
}

TEST_CASE("double partners pair actions five apart") {
  for (int i = 1; i <= 5; ++i) CHECK(double_partner(i) == i + 5);
  for (int i = 6; i <= 10; ++i) CHECK(double_partner(i) == i - 5);
}

TEST_CASE("exact interpolation recovers the polynomial") {
  const std::vector<double> s{0, 1, 2}, y{1, 2, 5};
  const PolyEstimator p = fit_polynomial(s, y, 2);
  const auto c = p.coefficients();
  REQUIRE(c.size() == 3);
  CHECK(std::abs(c[0] - 1.0) < 1e-10);
  CHECK(std::abs(c[1]) < 1e-10);
  CHECK(std::abs(c[2] - 1.0) < 1e-10);
  CHECK(p.residual_sum_of_squares() < 1e-20);
  CHECK(p(3.0) == Approx(10.0));
}

TEST_CASE("zero targets give zero coefficients") {
  const std::vector<double> s{-2, -1, 0, 1, 2, 3}, y(6, 0.0);
  for (double c : fit_polynomial(s, y, 4).coefficients()) CHECK(c == 0.0);
}

TEST_CASE("fit preconditions") {
  const std::vector<double> s{0, 1}, y{0, 1};
  CHECK_THROWS_AS(fit_polynomial(s, y, 2), Error);
  const std::vector<double> dup{0, 1, 1}, y3{0, 1, 1};
  CHECK_THROWS_AS(fit_polynomial(dup, y3, 2), Error);
}

TEST_CASE("residuals are orthogonal to the basis") {
  for (int d : {3, 6, 9}) {
    const PolyEstimator p = fit_action(TrueValueKind::kGaussianBump, d, 3);
    const auto states = p.sampled_states();
    for (int k = 0; k <= d; ++k) {
      double dot = 0.0;
      for (double s : states) {
        const double r = true_value(TrueValueKind::kGaussianBump, s) - p(s);
        dot += r * std::pow(s / 6.0, k);
      }
      CHECK(std::abs(dot) < 1e-8);
    }
  }
}

TEST_CASE("degree six sine fit is not exact") {
  const PolyEstimator p = fit_action(TrueValueKind::kSine, 6, 1);
  CHECK(p.residual_sum_of_squares() > 0.0);
  CHECK(p.degree() == 6);
}

TEST_CASE("fits agree with an independent solver") {
  for (auto kind : {TrueValueKind::kSine, TrueValueKind::kGaussianBump}) {
    for (int action : {1, 4, 10}) {
      const PolyEstimator p = fit_action(kind, 6, action);
      std::vector<double> s, y;
      for (int v : sample_states_for_action(action)) {
        s.push_back(v);
        y.push_back(true_value(kind, v));
      }
      const auto oracle = oracle_fit(s, y, 6);
      for (double x = -6.0; x <= 6.0; x += 0.25) {
        CHECK(std::abs(p(x) - (double)oracle_eval(oracle, x)) < 1e-8);
      }
    }
  }
}

TEST_CASE("bias curves follow their definitions") {
  const auto grid = default_grid();
  REQUIRE(grid.size() == 601);
  CHECK(grid.front() == -6.0);
  CHECK(grid.back() == 6.0);
  CHECK(grid[300] == 0.0);
  const auto pts = bias_curves(TrueValueKind::kGaussianBump, 6, grid);
  CHECK(pts[300].v_true == 2.0);
  std::vector<PolyEstimator> fits;
  for (int a = 1; a <= 10; ++a) fits.push_back(fit_action(TrueValueKind::kGaussianBump, 6, a));
  for (std::size_t i = 0; i < pts.size(); i += 37) {
    const auto& p = pts[i];
    for (int a = 0; a < 10; ++a) CHECK(p.estimates[a] == fits[a](p.s));
    const std::size_t best = argmax_tiebreak(p.estimates);
    CHECK(p.q_max == p.estimates[best]);
    CHECK(p.single_bias == p.q_max - p.v_true);
    const int partner = double_partner(static_cast<int>(best) + 1) - 1;
    CHECK(p.double_bias == p.estimates[partner] - p.v_true);
  }
}

TEST_CASE("estimates differ between actions") {
  const auto grid = default_grid();
  const auto pts = bias_curves(TrueValueKind::kSine, 6, grid);
  int distinct = 0;
  for (const auto& p : pts) {
    if (p.estimates[0] != p.estimates[4]) ++distinct;
  }
  CHECK(distinct > 500);
}

TEST_CASE("bias curves are deterministic and stay on the sampled range") {
  const auto grid = default_grid();
  const auto a = bias_curves(TrueValueKind::kGaussianBump, 9, grid);
  const auto b = bias_curves(TrueValueKind::kGaussianBump, 9, grid);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].single_bias == b[i].single_bias);
    CHECK(a[i].double_bias == b[i].double_bias);
  }
  const std::vector<double> outside{-6.5};
  CHECK_THROWS_AS(bias_curves(TrueValueKind::kSine, 6, outside), Error);
}

TEST_CASE("three configurations show the overestimation pattern") {
  const auto grid = default_grid();
  double max_abs_bump[2] = {0, 0};
  for (const auto& row : polyfit_rows()) {
    const auto pts = bias_curves(row.kind, row.degree, grid);
    double single = 0, dbl = 0, mx = 0;
    for (const auto& p : pts) {
      single += p.single_bias;
      dbl += std::abs(p.double_bias);
      mx = std::max(mx, std::abs(p.single_bias));
    }
    single /= pts.size();
    dbl /= pts.size();
    CHECK(single > 0.0);
    CHECK(dbl < single);
    if (row.kind == TrueValueKind::kGaussianBump) {
      max_abs_bump[row.degree == 9] = mx;
    }
  }
  CHECK(max_abs_bump[1] > max_abs_bump[0]);
}

}  // namespace
}  // namespace dqlab

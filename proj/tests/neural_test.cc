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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "core/argmax.h"
#include "core/error.h"
#include "core/rng.h"
#include "doctest.h"
#include "neural/checkpoint.h"
#include "neural/mlp.h"
#include "neural/rmsprop.h"
#include "oracles.h"

namespace dqlab {
namespace {

using doctest::Approx;

MlpParameters random_params(std::vector<int> sizes, bool shared, Rng& rng) {
  MlpParameters p(std::move(sizes), shared);
  for (double& v : p.flat()) v = rng.uniform(-1.0, 1.0);
  return p;
}

std::vector<double> random_vector(int n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

TEST_CASE("zero parameters give zero output") {
  const MlpParameters p({3, 4, 2});
  const auto q = forward(p, std::vector<double>{1.0, -2.0, 0.5});
  CHECK(q == std::vector<double>{0.0, 0.0});
}

TEST_CASE("linear layer with identity weights copies its input") {
  MlpParameters p({3, 2});
  auto w = p.weights(0);
  w[0 * 3 + 0] = 1.0;
  w[1 * 3 + 1] = 1.0;
  const auto q = forward(p, std::vector<double>{4.0, -5.0, 6.0});
  CHECK(q == std::vector<double>{4.0, -5.0});
}

TEST_CASE("shared bias shifts every output") {
  Rng rng(3);
  MlpParameters p = random_params({4, 6, 3}, true, rng);
  REQUIRE(p.biases(1).size() == 1);
  const auto x = random_vector(4, rng);
  const auto before = forward(p, x);
  p.biases(1)[0] += 2.5;
  const auto after = forward(p, x);
  for (std::size_t a = 0; a < 3; ++a) CHECK(after[a] == Approx(before[a] + 2.5));
  CHECK(argmax_tiebreak(before) == argmax_tiebreak(after));
}

TEST_CASE("forward checks the input length") {
  const MlpParameters p({3, 2});
  CHECK_THROWS_AS(forward(p, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(MlpParameters({3}), Error);
  CHECK_THROWS_AS(MlpParameters({3, 0, 2}), Error);
}

TEST_CASE("zero output gradient gives zero gradients") {
  Rng rng(4);
  const MlpParameters p = random_params({3, 5, 2}, false, rng);
  const auto g = backward(p, random_vector(3, rng), std::vector<double>{0.0, 0.0});
  for (double v : g.flat()) CHECK(v == 0.0);
}

TEST_CASE("linear layer gradient is the input in one row") {
  Rng rng(5);
  const MlpParameters p = random_params({3, 2}, false, rng);
  const std::vector<double> x{0.5, -1.0, 2.0};
  const auto g = backward(p, x, std::vector<double>{0.0, 1.0});
  const auto w = g.weights(0);
  for (int j = 0; j < 3; ++j) {
    CHECK(w[0 * 3 + j] == 0.0);
    CHECK(w[1 * 3 + j] == x[j]);
  }
  CHECK(g.biases(0)[0] == 0.0);
  CHECK(g.biases(0)[1] == 1.0);
}

TEST_CASE("backward matches finite differences") {
  Rng rng(6);
  const MlpParameters p = random_params({3, 5, 2}, false, rng);
  const auto x = random_vector(3, rng);
  const auto w = random_vector(2, rng);
  const auto g = backward(p, x, w);
  const auto fd = oracle::finite_difference_gradient(p, x, w);
  CHECK(oracle::max_relative_error(g.flat(), fd) < 1e-4);
}

TEST_CASE("backward matches finite differences on varied shapes") {
  Rng rng(7);
  const std::vector<std::vector<int>> shapes{
      {2, 3}, {4, 8, 3}, {5, 6, 4, 2}, {3, 7, 7, 1}};
  for (const auto& shape : shapes) {
    for (bool shared : {false, true}) {
      const MlpParameters p = random_params(shape, shared, rng);
      const auto x = random_vector(shape.front(), rng);
      const auto w = random_vector(shape.back(), rng);
      const auto fd = oracle::finite_difference_gradient(p, x, w);
      CHECK(oracle::max_relative_error(backward(p, x, w).flat(), fd) < 1e-4);
    }
  }
}

TEST_CASE("hidden activations are non-negative") {
  Rng rng(8);
  MlpParameters p = random_params({3, 6, 4}, false, rng);
  // An identity read-out of the hidden layer exposes the rectifier output.
  MlpParameters probe({3, 6, 6});
  std::copy(p.weights(0).begin(), p.weights(0).end(), probe.weights(0).begin());
  std::copy(p.biases(0).begin(), p.biases(0).end(), probe.biases(0).begin());
  for (int i = 0; i < 6; ++i) probe.weights(1)[i * 6 + i] = 1.0;
  for (int t = 0; t < 100; ++t) {
    for (double h : forward(probe, random_vector(3, rng))) CHECK(h >= 0.0);
  }
}

TEST_CASE("rmsprop hand-stepped scalar") {
  MlpParameters p({1, 1});
  MlpGradients g({1, 1});
  g.weights(0)[0] = 1.0;
  OptimizerState opt = make_optimizer(p, 0.1, 0.95, 1e-8);
  rmsprop_step(p, g, opt);
  CHECK(opt.mean_square[0] == Approx(0.05));
  CHECK(p.weights(0)[0] == Approx(-0.1 / std::sqrt(0.05 + 1e-8)));
  CHECK(p.weights(0)[0] == Approx(-0.4472).epsilon(1e-4));
  CHECK(p.biases(0)[0] == 0.0);

  const double first = std::abs(p.weights(0)[0]);
  const double before = p.weights(0)[0];
  rmsprop_step(p, g, opt);
  CHECK(std::abs(p.weights(0)[0] - before) < first);
}

TEST_CASE("rmsprop with zero gradient only decays the accumulator") {
  Rng rng(9);
  MlpParameters p = random_params({2, 3, 2}, false, rng);
  OptimizerState opt = make_optimizer(p, 0.01);
  for (double& a : opt.mean_square) a = rng.uniform01();
  const auto acc = opt.mean_square;
  const MlpParameters before = p;
  MlpGradients g({2, 3, 2});
  rmsprop_step(p, g, opt);
  CHECK(p == before);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    CHECK(opt.mean_square[i] == Approx(0.95 * acc[i]));
  }
}

TEST_CASE("rmsprop refuses non-finite gradients") {
  MlpParameters p({1, 1});
  MlpGradients g({1, 1});
  g.weights(0)[0] = std::numeric_limits<double>::quiet_NaN();
  OptimizerState opt = make_optimizer(p, 0.1);
  try {
    rmsprop_step(p, g, opt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumeric);
  }
  CHECK(p.weights(0)[0] == 0.0);
  CHECK(opt.mean_square[0] == 0.0);
}

TEST_CASE("rmsprop step size is self-normalizing") {
  for (double c : {1e-3, 1.0, 1e3}) {
    MlpParameters p({1, 1});
    MlpGradients g({1, 1});
    g.weights(0)[0] = c;
    OptimizerState opt = make_optimizer(p, 0.01);
    double last = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double before = p.weights(0)[0];
      rmsprop_step(p, g, opt);
      last = std::abs(p.weights(0)[0] - before);
    }
    CHECK(std::abs(last - 0.01) < 0.05 * 0.01);
  }
}

TEST_CASE("init weights are seeded and fan-in scaled") {
  Rng a(10), b(10);
  const MlpParameters pa = init_weights({100, 1000, 10}, false, a);
  const MlpParameters pb = init_weights({100, 1000, 10}, false, b);
  CHECK(pa == pb);
  for (double v : pa.biases(0)) CHECK(v == 0.0);

  auto moments = [](std::span<const double> w) {
    double s = 0.0, ss = 0.0;
    for (double v : w) {
      s += v;
      ss += v * v;
    }
    const double n = static_cast<double>(w.size());
    return std::pair{s / n, ss / n - (s / n) * (s / n)};
  };
  const auto [mean0, var0] = moments(pa.weights(0));
  const auto [mean1, var1] = moments(pa.weights(1));
  // 1e5 entries in layer 0 with variance 2/100.
  CHECK(std::abs(mean0) < 3.0 * std::sqrt(var0 / 1e5));
  CHECK(var0 == Approx(2.0 / 100).epsilon(0.02));
  CHECK(var1 == Approx(2.0 / 1000).epsilon(0.05));
}

TEST_CASE("checkpoint round trip is exact") {
  Rng rng(11);
  const MlpParameters p = init_weights({4, 7, 3}, true, rng);
  const auto bytes = encode_checkpoint(p);
  CHECK(bytes.size() == 8 + 8 + 8 + 3 * 8 + 8 + 8 + 8 * p.parameter_count());
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "DQLABMLP");
  CHECK(decode_checkpoint(bytes) == p);

  const auto path =
      (std::filesystem::temp_directory_path() / "dqlab_neural_test.bin").string();
  save_checkpoint(p, path);
  CHECK(load_checkpoint(path) == p);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoints are rejected") {
  Rng rng(12);
  const auto bytes = encode_checkpoint(init_weights({2, 3, 2}, false, rng));
  auto code = [](const std::vector<std::uint8_t>& b) {
    try {
      decode_checkpoint(b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(code(bad_magic) == ErrorCode::kParse);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  CHECK(code(truncated) == ErrorCode::kParse);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK(code(trailing) == ErrorCode::kParse);
  auto wrong_count = bytes;
  wrong_count[8 + 8 + 8 + 3 * 8 + 8] ^= 1;
  CHECK(code(wrong_count) == ErrorCode::kParse);
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/dqlab.bin"), Error);
}

TEST_CASE("training with clipped targets stays finite and deterministic") {
  auto train = [] {
    Rng rng(13);
    MlpParameters p = init_weights({4, 16, 3}, false, rng);
    OptimizerState opt = make_optimizer(p, 0.00025);
    MlpGradients g(std::vector<int>{4, 16, 3});
    for (int step = 0; step < 20000; ++step) {
      std::vector<double> x(4, 0.0);
      x[rng.uniform_int(4)] = 1.0;
      const auto q = forward(p, x);
      const int a = static_cast<int>(rng.uniform_int(3));
      const double target = std::clamp(rng.normal(), -1.0, 1.0);
      std::vector<double> dq(3, 0.0);
      dq[a] = 2.0 * (q[a] - target);
      g.set_zero();
      accumulate_backward(p, x, dq, g);
      rmsprop_step(p, g, opt);
    }
    return p;
  };
  const MlpParameters a = train();
  for (double v : a.flat()) CHECK(std::isfinite(v));
  CHECK(a == train());
}

}  // namespace
}  // namespace dqlab

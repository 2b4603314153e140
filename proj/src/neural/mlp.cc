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

#include "neural/mlp.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"

namespace dqlab {
namespace {

// Pre-activations and activations of every layer for one input.
struct Activations {
  std::vector<std::vector<double>> pre;   // z_l, l = 1..L
  std::vector<std::vector<double>> post;  // a_l, l = 0..L
};

Activations run_forward(const MlpParameters& params,
                        std::span<const double> input) {
  check(input.size() == static_cast<std::size_t>(params.input_size()),
        ErrorCode::kShape,
        "forward: expected input of length " +
            std::to_string(params.input_size()) + ", got " +
            std::to_string(input.size()));
  const int layers = params.layer_count();
  Activations act;
  act.post.emplace_back(input.begin(), input.end());
  for (int l = 0; l < layers; ++l) {
    const int in = params.layer_sizes()[l];
    const int out = params.layer_sizes()[l + 1];
    const auto w = params.weights(l);
    const auto b = params.biases(l);
    const auto& x = act.post.back();
    std::vector<double> z(out);
    for (int r = 0; r < out; ++r) {
      double sum = b.size() == 1 ? b[0] : b[r];
      const double* row = w.data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) sum += row[c] * x[c];
      z[r] = sum;
    }
    std::vector<double> a = z;
    if (l + 1 < layers) {
      for (double& v : a) v = std::max(v, 0.0);
    }
    act.pre.push_back(std::move(z));
    act.post.push_back(std::move(a));
  }
  return act;
}

}  // namespace

MlpParameters::MlpParameters(std::vector<int> layer_sizes,
                             bool shared_output_bias)
    : sizes_(std::move(layer_sizes)), shared_output_bias_(shared_output_bias) {
  check(sizes_.size() >= 2, ErrorCode::kShape,
        "MlpParameters: need at least input and output sizes");
  for (int s : sizes_) {
    check(s > 0, ErrorCode::kShape, "MlpParameters: layer sizes must be positive");
  }
  std::size_t total = 0;
  for (int l = 0; l < layer_count(); ++l) {
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1] + bias_count(l);
  }
  data_.assign(total, 0.0);
}

std::size_t MlpParameters::bias_count(int layer) const {
  if (shared_output_bias_ && layer == layer_count() - 1) return 1;
  return sizes_[layer + 1];
}

std::span<double> MlpParameters::weights(int layer) {
  return std::span<double>(data_).subspan(
      offsets_.at(layer), static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1]);
}

std::span<const double> MlpParameters::weights(int layer) const {
  return std::span<const double>(data_).subspan(
      offsets_.at(layer), static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1]);
}

std::span<double> MlpParameters::biases(int layer) {
  const std::size_t start =
      offsets_.at(layer) + static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1];
  return std::span<double>(data_).subspan(start, bias_count(layer));
}

std::span<const double> MlpParameters::biases(int layer) const {
  const std::size_t start =
      offsets_.at(layer) + static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1];
  return std::span<const double>(data_).subspan(start, bias_count(layer));
}

bool MlpParameters::same_shape(const MlpParameters& other) const {
  return sizes_ == other.sizes_ &&
         shared_output_bias_ == other.shared_output_bias_;
}

void MlpParameters::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

std::vector<double> forward(const MlpParameters& params,
                            std::span<const double> input) {
  return std::move(run_forward(params, input).post.back());
}

std::vector<double> accumulate_backward(const MlpParameters& params,
                                        std::span<const double> input,
                                        std::span<const double> output_grad,
                                        MlpGradients& grads) {
  check(grads.same_shape(params), ErrorCode::kShape,
        "backward: gradient buffer shape mismatch");
  check(output_grad.size() == static_cast<std::size_t>(params.output_size()),
        ErrorCode::kShape, "backward: output gradient length mismatch");
  Activations act = run_forward(params, input);

  std::vector<double> delta(output_grad.begin(), output_grad.end());
  for (int l = params.layer_count() - 1; l >= 0; --l) {
    const int in = params.layer_sizes()[l];
    const int out = params.layer_sizes()[l + 1];
    const auto& x = act.post[l];
    auto gw = grads.weights(l);
    auto gb = grads.biases(l);
    for (int r = 0; r < out; ++r) {
      double* row = gw.data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) row[c] += delta[r] * x[c];
      if (gb.size() == 1) {
        gb[0] += delta[r];
      } else {
        gb[r] += delta[r];
      }
    }
    if (l == 0) break;
    const auto w = params.weights(l);
    std::vector<double> prev(in, 0.0);
    for (int r = 0; r < out; ++r) {
      const double* row = w.data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) prev[c] += row[c] * delta[r];
    }
    const auto& z = act.pre[l - 1];
    for (int c = 0; c < in; ++c) {
      if (z[c] <= 0.0) prev[c] = 0.0;
    }
    delta = std::move(prev);
  }
  return std::move(act.post.back());
}

MlpGradients backward(const MlpParameters& params,
                      std::span<const double> input,
                      std::span<const double> output_grad) {
  MlpGradients grads(std::vector<int>(params.layer_sizes().begin(),
                                      params.layer_sizes().end()),
                     params.shared_output_bias());
  accumulate_backward(params, input, output_grad, grads);
  return grads;
}

MlpParameters init_weights(std::vector<int> layer_sizes,
                           bool shared_output_bias, Rng& rng) {
  MlpParameters params(std::move(layer_sizes), shared_output_bias);
  for (int l = 0; l < params.layer_count(); ++l) {
    const double scale = std::sqrt(2.0 / params.layer_sizes()[l]);
    for (double& w : params.weights(l)) w = scale * rng.normal();
  }
  return params;
}

}  // namespace dqlab

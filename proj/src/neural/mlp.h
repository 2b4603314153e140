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

#ifndef DQLAB_NEURAL_MLP_H_
#define DQLAB_NEURAL_MLP_H_

#include <cstddef>
#include <span>
#include <vector>

#include "core/rng.h"

namespace dqlab {

// Fully-connected network R^n -> R^m: rectifier hidden layers, linear output.
// All weights and biases live in one flat vector, layer by layer, each layer
// storing its out x in weight matrix row-major followed by its biases. With
// shared_output_bias the output layer has a single bias added to every action.
//
// Gradients use the same type and layout.
class MlpParameters {
 public:
  MlpParameters() = default;
  // Zero-initialized parameters. layer_sizes = {n, hidden..., m}.
  MlpParameters(std::vector<int> layer_sizes, bool shared_output_bias = false);

  std::span<const int> layer_sizes() const { return sizes_; }
  bool shared_output_bias() const { return shared_output_bias_; }
  int layer_count() const { return static_cast<int>(sizes_.size()) - 1; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }

  // Weights of affine layer l: rows = layer_sizes[l + 1], cols = layer_sizes[l].
  std::span<double> weights(int layer);
  std::span<const double> weights(int layer) const;
  std::span<double> biases(int layer);
  std::span<const double> biases(int layer) const;

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }
  std::size_t parameter_count() const { return data_.size(); }

  bool same_shape(const MlpParameters& other) const;
  void set_zero();

  bool operator==(const MlpParameters&) const = default;

 private:
  std::size_t bias_count(int layer) const;

  std::vector<int> sizes_;
  bool shared_output_bias_ = false;
  std::vector<double> data_;
  std::vector<std::size_t> offsets_;  // start of each layer's weights
};

using MlpGradients = MlpParameters;

std::vector<double> forward(const MlpParameters& params,
                            std::span<const double> input);

// Adds the gradient of sum_a output_grad[a] * Q_a(input) with respect to every
// parameter into `grads`, and returns Q(input).
std::vector<double> accumulate_backward(const MlpParameters& params,
                                        std::span<const double> input,
                                        std::span<const double> output_grad,
                                        MlpGradients& grads);

// Gradient of sum_a output_grad[a] * Q_a(input).
MlpGradients backward(const MlpParameters& params,
                      std::span<const double> input,
                      std::span<const double> output_grad);

// Weights ~ N(0, 2 / fan_in), biases zero.
MlpParameters init_weights(std::vector<int> layer_sizes,
                           bool shared_output_bias, Rng& rng);

}  // namespace dqlab

#endif  // DQLAB_NEURAL_MLP_H_

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

#include "neural/rmsprop.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"

namespace dqlab {

OptimizerState make_optimizer(const MlpParameters& params,
                              double learning_rate, double decay,
                              double damping) {
  check(learning_rate >= 0.0, ErrorCode::kInvalidConfig,
        "rmsprop: learning rate must be non-negative");
  check(decay >= 0.0 && decay < 1.0, ErrorCode::kInvalidConfig,
        "rmsprop: decay must lie in [0, 1)");
  check(damping > 0.0, ErrorCode::kInvalidConfig,
        "rmsprop: damping must be positive");
  OptimizerState opt;
  opt.mean_square.assign(params.parameter_count(), 0.0);
  opt.learning_rate = learning_rate;
  opt.decay = decay;
  opt.damping = damping;
  return opt;
}

void rmsprop_step(MlpParameters& params, const MlpGradients& grads,
                  OptimizerState& opt) {
  check(grads.same_shape(params) &&
            opt.mean_square.size() == params.parameter_count(),
        ErrorCode::kShape, "rmsprop_step: shape mismatch");
  const auto g = grads.flat();
  check(std::all_of(g.begin(), g.end(),
                    [](double x) { return std::isfinite(x); }),
        ErrorCode::kNumeric, "rmsprop_step: non-finite gradient, step refused");
  auto theta = params.flat();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    double& acc = opt.mean_square[i];
    acc = opt.decay * acc + (1.0 - opt.decay) * g[i] * g[i];
    theta[i] -= opt.learning_rate * g[i] / std::sqrt(acc + opt.damping);
  }
}

}  // namespace dqlab

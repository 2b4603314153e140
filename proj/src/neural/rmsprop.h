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

#ifndef DQLAB_NEURAL_RMSPROP_H_
#define DQLAB_NEURAL_RMSPROP_H_

#include <vector>

#include "neural/mlp.h"

namespace dqlab {

// Plain (uncentered) RMSProp without a momentum term:
//   acc   <- decay * acc + (1 - decay) * g^2
//   theta <- theta - learning_rate * g / sqrt(acc + damping)
struct OptimizerState {
  std::vector<double> mean_square;
  double decay = 0.95;
  double learning_rate = 0.00025;
  double damping = 1e-8;
};

OptimizerState make_optimizer(const MlpParameters& params,
                              double learning_rate, double decay = 0.95,
                              double damping = 1e-8);

// Applies one step in place. A non-finite gradient entry raises a numeric
// error before anything is modified.
void rmsprop_step(MlpParameters& params, const MlpGradients& grads,
                  OptimizerState& opt);

}  // namespace dqlab

#endif  // DQLAB_NEURAL_RMSPROP_H_

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

// Parameter checkpoint format (all integers and floats little-endian):
//
//   offset  size      field
//   0       8         magic "DQLABMLP"
//   8       8         uint64 format version (1)
//   16      8         uint64 L = number of layer sizes (input, hidden..., output)
//   24      8 * L     uint64 layer sizes
//   ..      8         uint64 flags (bit 0: shared output bias)
//   ..      8         uint64 P = number of parameters
//   ..      8 * P     float64 parameters in MlpParameters::flat() order
//
// P must equal the count implied by the layer sizes and flags.

#ifndef DQLAB_NEURAL_CHECKPOINT_H_
#define DQLAB_NEURAL_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "neural/mlp.h"

namespace dqlab {

std::vector<std::uint8_t> encode_checkpoint(const MlpParameters& params);
MlpParameters decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const MlpParameters& params, const std::string& path);
MlpParameters load_checkpoint(const std::string& path);

}  // namespace dqlab

#endif  // DQLAB_NEURAL_CHECKPOINT_H_

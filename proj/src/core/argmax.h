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

#ifndef DQLAB_CORE_ARGMAX_H_
#define DQLAB_CORE_ARGMAX_H_

#include <cmath>
#include <cstddef>
#include <span>

#include "core/error.h"

namespace dqlab {

// Index of the maximum entry; ties go to the lowest index. Every greedy
// choice in the library (Q-learning max, Double Q argmax, acting) uses this.
inline std::size_t argmax_tiebreak(std::span<const double> values) {
  check(!values.empty(), ErrorCode::kInvalidInput,
        "argmax_tiebreak: empty value vector");
  std::size_t best = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    check(std::isfinite(values[i]), ErrorCode::kInvalidInput,
          "argmax_tiebreak: non-finite entry at index " + std::to_string(i));
    if (values[i] > values[best]) best = i;
  }
  return best;
}

// max_a values[a], with the same validation as argmax_tiebreak.
inline double max_value(std::span<const double> values) {
  return values[argmax_tiebreak(values)];
}

}  // namespace dqlab

#endif  // DQLAB_CORE_ARGMAX_H_

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

#include "deep_agent/replay_buffer.h"

#include "core/error.h"

namespace dqlab {

ReplayBuffer::ReplayBuffer(std::size_t capacity) {
  check(capacity > 0, ErrorCode::kInvalidConfig,
        "ReplayBuffer: capacity must be positive");
  storage_.resize(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  storage_[next_] = t;
  next_ = (next_ + 1) % storage_.size();
  if (size_ < storage_.size()) ++size_;
  ++insertions_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  check(i < size_, ErrorCode::kInvalidInput, "ReplayBuffer: index out of range");
  const std::size_t oldest = size_ < storage_.size() ? 0 : next_;
  return storage_[(oldest + i) % storage_.size()];
}

std::vector<Transition> ReplayBuffer::sample(std::size_t k, Rng& rng) const {
  check(size_ > 0, ErrorCode::kPrecondition,
        "ReplayBuffer: cannot sample from an empty buffer");
  std::vector<Transition> batch;
  batch.reserve(k);
  for (std::size_t i = 0; i < k; ++i) batch.push_back(at(rng.uniform_int(size_)));
  return batch;
}

}  // namespace dqlab

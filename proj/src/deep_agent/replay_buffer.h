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

#ifndef DQLAB_DEEP_AGENT_REPLAY_BUFFER_H_
#define DQLAB_DEEP_AGENT_REPLAY_BUFFER_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "core/env.h"
#include "core/rng.h"

namespace dqlab {

// Fixed-capacity FIFO of transitions with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  // Appends, evicting the oldest entry once full.
  void push(const Transition& t);

  // k independent uniform draws with replacement. Precondition: non-empty.
  std::vector<Transition> sample(std::size_t k, Rng& rng) const;

  // i-th oldest stored transition.
  const Transition& at(std::size_t i) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return storage_.size(); }
  std::uint64_t insertions() const { return insertions_; }
  bool empty() const { return size_ == 0; }

 private:
  std::vector<Transition> storage_;
  std::size_t next_ = 0;  // slot the next push writes
  std::size_t size_ = 0;
  std::uint64_t insertions_ = 0;
};

}  // namespace dqlab

#endif  // DQLAB_DEEP_AGENT_REPLAY_BUFFER_H_

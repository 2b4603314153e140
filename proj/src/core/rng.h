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

#ifndef DQLAB_CORE_RNG_H_
#define DQLAB_CORE_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace dqlab {

// Logical consumers of randomness. Each gets its own stream so changing how
// often one component draws does not shift the others.
enum class Stream : std::uint64_t {
  kEnvironment = 1,
  kExploration = 2,
  kReplay = 3,
  kWeightInit = 4,
  kEvaluation = 5,
  kMonteCarlo = 6,
  kTableCoin = 7,
};

// Seeded random stream built on std::mt19937_64. The conversions to uniform,
// integer and normal variates are implemented here rather than with the
// <random> distributions, whose output is implementation-defined; identical
// seeds therefore give bit-identical draws on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for `stream` (and an optional sub-index such as the
  // action count of a Monte Carlo cell) derived from a run seed.
  static Rng for_stream(std::uint64_t seed, Stream stream,
                        std::uint64_t index = 0);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_int(std::size_t n);
  // Standard normal via the Marsaglia polar method.
  double normal();
  bool bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace dqlab

#endif  // DQLAB_CORE_RNG_H_

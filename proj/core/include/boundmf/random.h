// Copyright 2026 The boundmf Authors. All Rights Reserved.
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

#ifndef BOUNDMF_RANDOM_H_
#define BOUNDMF_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace boundmf {

// Seeded deterministic generator. Split() derives independent child streams
// so that, e.g., every cross-validation round or experiment cell gets its own
// reproducible sequence regardless of execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Child generator for stream `stream`; does not advance this generator.
  Rng Split(std::uint64_t stream) const;

  // Uniform in the open interval (lo, hi).
  double Uniform(double lo = 0.0, double hi = 1.0);
  double Normal(double mean = 0.0, double stddev = 1.0);
  // Uniform integer in [0, n).
  std::size_t Index(std::size_t n);

  // Random permutation of 0..n-1.
  std::vector<std::size_t> Permutation(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace boundmf

#endif  // BOUNDMF_RANDOM_H_

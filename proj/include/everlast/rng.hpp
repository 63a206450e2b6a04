// Copyright 2026 The Everlast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVERLAST_RNG_HPP_
#define EVERLAST_RNG_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace everlast {

// Source of uniform randomness consumed by every mechanism in the library.
// Mechanisms never touch global RNG state; tests may substitute a stub that
// replays fixed uniforms.
class UniformSource {
 public:
  virtual ~UniformSource() = default;

  // Uniform double in [0, 1), derived from 53 random bits.
  virtual double next_uniform() = 0;

  virtual std::uint64_t next_u64() = 0;
};

// Deterministic, splittable stream (xoshiro256++ seeded through splitmix64).
// Identical seeds yield identical draw sequences on every platform.
class Rng final : public UniformSource {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() override;
  double next_uniform() override;

  // Child stream whose future output is independent of draws made on the
  // parent after the split.
  Rng split();

 private:
  std::array<std::uint64_t, 4> state_;
};

// Test stub that cycles through a fixed list of uniforms. A single value of
// 0.5 turns every Laplace draw into exact zero noise.
class FixedUniformSource final : public UniformSource {
 public:
  explicit FixedUniformSource(std::vector<double> values);

  double next_uniform() override;
  std::uint64_t next_u64() override;

 private:
  std::vector<double> values_;
  std::size_t position_ = 0;
};

// Unbiased uniform integer in [0, bound) via rejection sampling.
std::uint64_t uniform_below(UniformSource& rng, std::uint64_t bound);

// Stable per-trial seed derivation; independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace everlast

#endif  // EVERLAST_RNG_HPP_

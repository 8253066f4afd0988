// Copyright 2026 The Unopt Authors
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

#pragma once

#include <array>
#include <cstdint>

namespace unopt {

/// 64-bit seed; equal seeds give bit-identical streams on every platform.
struct Seed {
  std::uint64_t value = 0;
};

/// SplitMix64 step. Used to expand seeds and to derive child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives an independent seed for a labelled sub-task (e.g. one benchmark sample).
Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b = 0);

/// xoshiro256** generator with portable helpers for uniform and normal draws.
/// The standard library distributions are implementation-defined, so every
/// draw used by the library goes through this class.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return next(); }
  result_type next();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via the polar method; the spare value is cached.
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace unopt

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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unopt/circuit.hpp"
#include "unopt/matrix.hpp"
#include "unopt/rng.hpp"

namespace unopt {

struct StateVector {
  int n_qubits = 0;
  std::vector<Complex> amplitudes;

  /// |0...0> on n qubits.
  static StateVector zero(int n_qubits);
  double norm_squared() const;
};

inline constexpr int kSimulateQubitLimit = 24;

/// Applies the gates of `c` in order to `input` (default |0...0>).
StateVector simulate(const Circuit& c, const std::optional<StateVector>& input = std::nullopt,
                     int max_qubits = kSimulateQubitLimit);

/// |<0|V^dagger U|0>|^2, clamped to [0, 1].
double fidelity_exact(const Circuit& u, const Circuit& v);

struct SampledFidelity {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Runs U then V^dagger on |0...0>, measures `shots` times in the computational
/// basis and reports the all-zeros frequency with its binomial standard error.
SampledFidelity fidelity_sampled(const Circuit& u, const Circuit& v, std::uint64_t shots,
                                 Rng& rng);

enum class Verdict { Yes, No, Indeterminate };
enum class VerifyMode { Exact, Sampled };

std::string to_string(Verdict v);
VerifyMode parse_verify_mode(const std::string& name);

struct EquivalenceVerdict {
  Verdict verdict = Verdict::Indeterminate;
  double fidelity_estimate = 0.0;
  std::optional<std::uint64_t> shots;
  std::optional<double> std_error;
};

/// ceil(16 / gap_eps^2).
std::uint64_t default_shots(double gap_eps);

/// Exact mode: Yes iff F >= 1 - gap_eps, No iff F <= 1 - 2 gap_eps.
/// Sampled mode: compares the estimate with 1 - 1.5 gap_eps and reports
/// Indeterminate within two standard errors of that midpoint.
EquivalenceVerdict decide_equivalence(const Circuit& u, const Circuit& v, double gap_eps,
                                      VerifyMode mode,
                                      std::optional<std::uint64_t> shots = std::nullopt,
                                      Seed seed = Seed{0});

}  // namespace unopt

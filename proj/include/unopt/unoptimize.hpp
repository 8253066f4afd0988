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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unopt/circuit.hpp"
#include "unopt/matrix.hpp"
#include "unopt/rng.hpp"

namespace unopt {

enum class PairSelection { Random, Concatenated };

std::string to_string(PairSelection method);
/// Accepts "random" and "concat" (or "concatenated").
PairSelection parse_pair_selection(const std::string& name);

/// Two two-qubit gates sharing exactly one qubit, with B2 the next gate
/// after B1 on the shared wire.
struct Pair {
  std::size_t b1_index = 0;
  std::size_t b2_index = 0;
  Qubit shared_qubit = 0;
  Qubit b1_other = 0;
  Qubit b2_other = 0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/// One merged output gate of the synthesis window and the window gates it absorbed.
struct SynthesisRecord {
  std::vector<std::size_t> members;
  Gate merged;
};

struct ErStep {
  Pair pair;
  /// A on the qubits of B2, in B2's qubit order.
  ComplexMatrix inserted_a;
  /// 8x8 on (b1_other, shared_qubit, b2_other), first qubit most significant.
  ComplexMatrix a_tilde;
  std::vector<Gate> decomposition_gates;
  /// Gates b1_index..b2_index of the input circuit.
  std::vector<Gate> window_before;
  std::vector<SynthesisRecord> synthesis_map;
  std::size_t pre_count = 0;
  std::size_t post_count = 0;

  /// Positions [first, second) of the output circuit replaced by this step.
  std::pair<std::size_t, std::size_t> output_range() const {
    return {pair.b1_index, pair.b1_index + synthesis_map.size()};
  }
};

inline constexpr const char* kRecipeFormat = "unopt-recipe/1";

struct Recipe {
  std::vector<ErStep> steps;
  std::string source_fingerprint;
  std::string result_fingerprint;
};

std::vector<Pair> find_pairs(const Circuit& c);

/// Throws Validation unless `pair` satisfies the pair invariants in `c`.
void validate_pair(const Circuit& c, const Pair& pair);

inline constexpr int kPairRetryBudget = 64;

Pair select_pair(const Circuit& c, PairSelection method, const ErStep* prev, Rng& rng);

/// B1^dagger (I x A^dagger) B1 on the slots (b1_other, shared, b2_other).
/// `a_qubits` gives the physical qubits of `a_dag` in its local order.
ComplexMatrix build_a_tilde(const Gate& b1, const ComplexMatrix& a_dag,
                            const std::vector<Qubit>& a_qubits, const Pair& pair);

std::pair<Circuit, ErStep> elementary_recipe_step(const Circuit& c, const Pair& pair,
                                                  const ComplexMatrix& a);

/// Re-executes a recorded step on `c`; throws Corruption on any divergence.
Circuit replay_step(const Circuit& c, const ErStep& step);

/// Restores the input of a recorded step from its output.
Circuit invert_step(const Circuit& c, const ErStep& step);

struct Unoptimized {
  Circuit v;
  Recipe recipe;
};

Unoptimized unoptimize(const Circuit& u, PairSelection method, std::optional<int> k, Rng& rng);

Circuit apply_recipe(const Circuit& u, const Recipe& recipe);
Circuit invert_recipe(const Circuit& v, const Recipe& recipe);

/// Same length, same qubits and matrices equal up to per-gate phase.
bool same_gates(const Circuit& a, const Circuit& b, double tol = kEqualTol);

enum class WitnessReason { Ok, FingerprintMismatch, ReplayDiverged, GateMismatch };

std::string to_string(WitnessReason reason);

struct WitnessCheck {
  bool valid = false;
  WitnessReason reason = WitnessReason::Ok;
  std::string detail;
};

WitnessCheck verify_recipe_witness(const Circuit& u, const Circuit& v, const Recipe& recipe);

}  // namespace unopt

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

#include "unopt/unoptimize.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "unopt/decompose.hpp"
#include "unopt/error.hpp"
#include "unopt/serialize.hpp"
#include "unopt/synthesis.hpp"

namespace unopt {
namespace {

constexpr double kReplayTol = 1e-10;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

bool gates_close(const Gate& a, const Gate& b, double tol) {
  return a.qubits == b.qubits && max_abs_diff(a.matrix, b.matrix) <= tol;
}

Circuit splice(const Circuit& c, std::size_t begin, std::size_t end,
               const std::vector<Gate>& middle) {
  std::vector<Gate> gates;
  gates.reserve(c.size() - (end - begin) + middle.size());
  gates.insert(gates.end(), c.gates().begin(), c.gates().begin() + static_cast<long>(begin));
  gates.insert(gates.end(), middle.begin(), middle.end());
  gates.insert(gates.end(), c.gates().begin() + static_cast<long>(end), c.gates().end());
  return Circuit(c.n_qubits(), std::move(gates));
}

std::array<Qubit, 3> slots(const Pair& p) { return {p.b1_other, p.shared_qubit, p.b2_other}; }

/// Decomposition, B1, A, the gates strictly between the pair, then B2.
Circuit expanded_window(const Circuit& c, const Pair& p, const std::vector<Gate>& decomposition,
                        const ComplexMatrix& a) {
  Circuit w(c.n_qubits());
  for (const Gate& g : decomposition) w.append(g);
  w.append(c[p.b1_index]);
  w.append(Gate{c[p.b2_index].qubits, a, "A", std::nullopt});
  for (std::size_t i = p.b1_index + 1; i <= p.b2_index; ++i) w.append(c[i]);
  return w;
}

std::vector<SynthesisRecord> synthesize_window(const Circuit& window) {
  std::vector<SynthesisRecord> out;
  for (const Block& b : greedy_blocks(window, 2)) {
    out.push_back(SynthesisRecord{b.members, merge_block(window, b)});
  }
  return out;
}

std::vector<Gate> merged_gates(const std::vector<SynthesisRecord>& records) {
  std::vector<Gate> out;
  out.reserve(records.size());
  for (const SynthesisRecord& r : records) out.push_back(r.merged);
  return out;
}

Pair select_random(const Circuit& c, const std::vector<Pair>& pairs, Rng& rng) {
  std::vector<std::size_t> two_qubit;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].arity() == 2) two_qubit.push_back(i);
  }
  if (!pairs.empty()) {
    for (int attempt = 0; attempt < kPairRetryBudget; ++attempt) {
      const std::size_t g = two_qubit[rng.below(two_qubit.size())];
      std::vector<const Pair*> candidates;
      for (const Pair& p : pairs) {
        if (p.b1_index == g || p.b2_index == g) candidates.push_back(&p);
      }
      if (!candidates.empty()) return *candidates[rng.below(candidates.size())];
    }
  }
  throw Error(ErrorKind::Resource, "select_pair: no valid pair found after " +
                                       std::to_string(kPairRetryBudget) + " attempts");
}

}  // namespace

std::string to_string(PairSelection method) {
  return method == PairSelection::Random ? "random" : "concat";
}

PairSelection parse_pair_selection(const std::string& name) {
  if (name == "random") return PairSelection::Random;
  if (name == "concat" || name == "concatenated") return PairSelection::Concatenated;
  throw Error(ErrorKind::Usage, "unknown pair selection method '" + name + "'");
}

std::vector<Pair> find_pairs(const Circuit& c) {
  // next[i][s]: index of the next gate after i on the wire of c[i].qubits[s]
  const std::size_t none = c.size();
  std::vector<std::array<std::size_t, 3>> next(c.size());
  std::vector<std::size_t> upcoming(static_cast<std::size_t>(c.n_qubits()), none);
  for (std::size_t i = c.size(); i-- > 0;) {
    const Gate& g = c[i];
    for (std::size_t s = 0; s < g.arity(); ++s) {
      const auto q = static_cast<std::size_t>(g.qubits[s]);
      next[i][s] = upcoming[q];
      upcoming[q] = i;
    }
  }
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& b1 = c[i];
    if (b1.arity() != 2) continue;
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t j = next[i][s];
      if (j == none || c[j].arity() != 2) continue;
      const Gate& b2 = c[j];
      const Qubit shared = b1.qubits[s];
      const Qubit o1 = b1.qubits[1 - s];
      if (b2.acts_on(o1)) continue;
      const Qubit o2 = b2.qubits[0] == shared ? b2.qubits[1] : b2.qubits[0];
      pairs.push_back(Pair{i, j, shared, o1, o2});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.b1_index != b.b1_index ? a.b1_index < b.b1_index : a.b2_index < b.b2_index;
  });
  return pairs;
}

void validate_pair(const Circuit& c, const Pair& p) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorKind::Validation, "invalid pair: " + why);
  };
  if (p.b1_index >= p.b2_index || p.b2_index >= c.size()) fail("indices out of order or range");
  const Gate& b1 = c[p.b1_index];
  const Gate& b2 = c[p.b2_index];
  if (b1.arity() != 2 || b2.arity() != 2) fail("both gates must act on two qubits");
  if (!b1.acts_on(p.shared_qubit) || !b2.acts_on(p.shared_qubit)) fail("shared qubit missing");
  if (!b1.acts_on(p.b1_other) || p.b1_other == p.shared_qubit) fail("bad b1_other");
  if (!b2.acts_on(p.b2_other) || p.b2_other == p.shared_qubit) fail("bad b2_other");
  if (p.b1_other == p.b2_other) fail("gates share two qubits");
  for (std::size_t i = p.b1_index + 1; i < p.b2_index; ++i) {
    if (c[i].acts_on(p.shared_qubit)) fail("gate between the pair acts on the shared qubit");
  }
}

Pair select_pair(const Circuit& c, PairSelection method, const ErStep* prev, Rng& rng) {
  const std::vector<Pair> pairs = find_pairs(c);
  if (method == PairSelection::Concatenated && prev != nullptr) {
    // every gate of the previous step's synthesized window counts as generated
    const auto [lo, hi] = prev->output_range();
    const Pair* best = nullptr;
    for (const Pair& p : pairs) {
      const bool in1 = p.b1_index >= lo && p.b1_index < hi;
      const bool in2 = p.b2_index >= lo && p.b2_index < hi;
      if (in1 == in2) continue;
      if (best == nullptr || p.b2_index > best->b2_index ||
          (p.b2_index == best->b2_index && p.b1_index > best->b1_index)) {
        best = &p;
      }
    }
    if (best != nullptr) return *best;
  }
  return select_random(c, pairs, rng);
}

ComplexMatrix build_a_tilde(const Gate& b1, const ComplexMatrix& a_dag,
                            const std::vector<Qubit>& a_qubits, const Pair& pair) {
  if (b1.matrix.rows() != 4 || a_dag.rows() != 4 || a_dag.cols() != 4 || a_qubits.size() != 2) {
    throw Error(ErrorKind::Dimension, "build_a_tilde: expected two-qubit operands");
  }
  if (!is_unitary(b1.matrix) || !is_unitary(a_dag)) {
    throw Error(ErrorKind::Validation, "build_a_tilde: operands must be unitary");
  }
  const std::array<Qubit, 3> support = slots(pair);
  const ComplexMatrix b = embed_local(b1.matrix, b1.qubits, support);
  const ComplexMatrix ad = embed_local(a_dag, a_qubits, support);
  return b.adjoint() * ad * b;
}

std::pair<Circuit, ErStep> elementary_recipe_step(const Circuit& c, const Pair& pair,
                                                  const ComplexMatrix& a) {
  validate_pair(c, pair);
  if (a.rows() != 4 || a.cols() != 4) {
    throw Error(ErrorKind::Dimension, "elementary_recipe_step: A must be 4x4");
  }
  if (!is_unitary(a)) throw Error(ErrorKind::Validation, "elementary_recipe_step: A not unitary");

  ErStep step;
  step.pair = pair;
  step.inserted_a = a;
  step.a_tilde = build_a_tilde(c[pair.b1_index], a.adjoint(), c[pair.b2_index].qubits, pair);
  step.decomposition_gates = decompose_three_qubit(step.a_tilde, slots(pair)).gates;
  step.window_before.assign(c.gates().begin() + static_cast<long>(pair.b1_index),
                            c.gates().begin() + static_cast<long>(pair.b2_index) + 1);
  step.synthesis_map =
      synthesize_window(expanded_window(c, pair, step.decomposition_gates, a));
  Circuit out = splice(c, pair.b1_index, pair.b2_index + 1, merged_gates(step.synthesis_map));
  step.pre_count = c.size();
  step.post_count = out.size();
  return {std::move(out), std::move(step)};
}

Circuit replay_step(const Circuit& c, const ErStep& step) {
  auto corrupt = [](const std::string& why) {
    throw Error(ErrorKind::Corruption, "replay diverged: " + why);
  };
  if (c.size() != step.pre_count) corrupt("input gate count differs");
  try {
    validate_pair(c, step.pair);
  } catch (const Error& e) {
    corrupt(e.what());
  }
  const Pair& p = step.pair;
  if (step.window_before.size() != p.b2_index - p.b1_index + 1) corrupt("window size");
  for (std::size_t i = 0; i < step.window_before.size(); ++i) {
    if (!gates_close(step.window_before[i], c[p.b1_index + i], kReplayTol)) {
      corrupt("window gate " + std::to_string(i) + " differs");
    }
  }
  const ComplexMatrix a_tilde =
      build_a_tilde(c[p.b1_index], step.inserted_a.adjoint(), c[p.b2_index].qubits, p);
  if (max_abs_diff(a_tilde, step.a_tilde) > kReplayTol) corrupt("recomputed A-tilde differs");
  const std::array<Qubit, 3> support = slots(p);
  if (!equal_up_to_global_phase(local_unitary(step.decomposition_gates, support), a_tilde,
                                kEqualTol)) {
    corrupt("stored decomposition does not reproduce A-tilde");
  }
  const std::vector<SynthesisRecord> synth =
      synthesize_window(expanded_window(c, p, step.decomposition_gates, step.inserted_a));
  if (synth.size() != step.synthesis_map.size()) corrupt("synthesis block count");
  for (std::size_t i = 0; i < synth.size(); ++i) {
    if (synth[i].members != step.synthesis_map[i].members ||
        !gates_close(synth[i].merged, step.synthesis_map[i].merged, kReplayTol)) {
      corrupt("synthesized gate " + std::to_string(i) + " differs");
    }
  }
  Circuit out = splice(c, p.b1_index, p.b2_index + 1, merged_gates(step.synthesis_map));
  if (out.size() != step.post_count) corrupt("output gate count differs");
  return out;
}

Circuit invert_step(const Circuit& c, const ErStep& step) {
  auto mismatch = [](const std::string& why) {
    throw Error(ErrorKind::Validation, "circuit does not match recorded step output: " + why);
  };
  if (c.size() != step.post_count) mismatch("gate count");
  const auto [lo, hi] = step.output_range();
  for (std::size_t i = lo; i < hi; ++i) {
    const Gate& want = step.synthesis_map[i - lo].merged;
    if (c[i].qubits != want.qubits || !equal_up_to_global_phase(c[i].matrix, want.matrix)) {
      mismatch("gate " + std::to_string(i));
    }
  }
  return splice(c, lo, hi, step.window_before);
}

Unoptimized unoptimize(const Circuit& u, PairSelection method, std::optional<int> k, Rng& rng) {
  if (u.n_qubits() < 3) throw Error(ErrorKind::Validation, "unoptimize: needs at least 3 qubits");
  for (const Gate& g : u.gates()) {
    if (g.arity() > 2) throw Error(ErrorKind::Validation, "unoptimize: gates must have arity <= 2");
  }
  const int steps = k.value_or(u.n_qubits() * u.n_qubits());
  if (steps < 0) throw Error(ErrorKind::Validation, "unoptimize: k must be non-negative");

  Recipe recipe;
  recipe.source_fingerprint = fingerprint(u);
  recipe.steps.reserve(static_cast<std::size_t>(steps));
  Circuit cur = u;
  for (int i = 0; i < steps; ++i) {
    const ErStep* prev = recipe.steps.empty() ? nullptr : &recipe.steps.back();
    Pair pair;
    try {
      pair = select_pair(cur, method, prev, rng);
    } catch (const Error& e) {
      throw Error(e.kind(), "unoptimize step " + std::to_string(i) + ": " + e.what());
    }
    const ComplexMatrix a = haar_random_unitary(4, rng);
    auto [next, step] = elementary_recipe_step(cur, pair, a);
    cur = std::move(next);
    recipe.steps.push_back(std::move(step));
  }
  recipe.result_fingerprint = fingerprint(cur);
  return {std::move(cur), std::move(recipe)};
}

Circuit apply_recipe(const Circuit& u, const Recipe& recipe) {
  if (fingerprint(u) != recipe.source_fingerprint) {
    throw Error(ErrorKind::Validation, "apply_recipe: circuit fingerprint does not match recipe");
  }
  Circuit cur = u;
  for (std::size_t i = 0; i < recipe.steps.size(); ++i) {
    try {
      cur = replay_step(cur, recipe.steps[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!recipe.result_fingerprint.empty() && fingerprint(cur) != recipe.result_fingerprint) {
    throw Error(ErrorKind::Corruption, "apply_recipe: replay result fingerprint differs");
  }
  return cur;
}

Circuit invert_recipe(const Circuit& v, const Recipe& recipe) {
  Circuit cur = v;
  for (std::size_t i = recipe.steps.size(); i-- > 0;) {
    try {
      cur = invert_step(cur, recipe.steps[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "invert_recipe step " + std::to_string(i) + ": " + e.what());
    }
  }
  if (fingerprint(cur) != recipe.source_fingerprint) {
    throw Error(ErrorKind::Validation,
                "invert_recipe: circuit does not match the recipe's recorded output");
  }
  return cur;
}

bool same_gates(const Circuit& a, const Circuit& b, double tol) {
  if (a.n_qubits() != b.n_qubits() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].qubits != b[i].qubits || !equal_up_to_global_phase(a[i].matrix, b[i].matrix, tol)) {
      return false;
    }
  }
  return true;
}

std::string to_string(WitnessReason reason) {
  switch (reason) {
    case WitnessReason::Ok: return "ok";
    case WitnessReason::FingerprintMismatch: return "fingerprint-mismatch";
    case WitnessReason::ReplayDiverged: return "replay-diverged";
    case WitnessReason::GateMismatch: return "gate-mismatch";
  }
  return "unknown";
}

WitnessCheck verify_recipe_witness(const Circuit& u, const Circuit& v, const Recipe& recipe) {
  if (fingerprint(u) != recipe.source_fingerprint) {
    return {false, WitnessReason::FingerprintMismatch, "source circuit differs from recipe"};
  }
  Circuit replayed(u.n_qubits());
  try {
    replayed = apply_recipe(u, recipe);
  } catch (const Error& e) {
    return {false, WitnessReason::ReplayDiverged, e.what()};
  }
  if (!same_gates(replayed, v)) {
    return {false, WitnessReason::GateMismatch, "replayed circuit differs from v"};
  }
  return {true, WitnessReason::Ok, {}};
}

}  // namespace unopt

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

#include "unopt/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "unopt/error.hpp"

namespace unopt {

StateVector StateVector::zero(int n_qubits) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  s.amplitudes[0] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double t = 0.0;
  for (const Complex& a : amplitudes) t += std::norm(a);
  return t;
}

StateVector simulate(const Circuit& c, const std::optional<StateVector>& input, int max_qubits) {
  if (c.n_qubits() > max_qubits) {
    throw Error(ErrorKind::Resource, "simulate: " + std::to_string(c.n_qubits()) +
                                         " qubits exceeds limit " + std::to_string(max_qubits));
  }
  StateVector s = input ? *input : StateVector::zero(c.n_qubits());
  if (s.n_qubits != c.n_qubits() || s.amplitudes.size() != (std::size_t{1} << c.n_qubits())) {
    throw Error(ErrorKind::Dimension, "simulate: input state does not match circuit width");
  }
  for (const Gate& g : c.gates()) apply_gate(s.amplitudes, s.n_qubits, g);
  return s;
}

double fidelity_exact(const Circuit& u, const Circuit& v) {
  if (u.n_qubits() != v.n_qubits()) {
    throw Error(ErrorKind::Dimension, "fidelity_exact: qubit counts differ");
  }
  const StateVector a = simulate(u);
  const StateVector b = simulate(v);
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    overlap += std::conj(b.amplitudes[i]) * a.amplitudes[i];
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

SampledFidelity fidelity_sampled(const Circuit& u, const Circuit& v, std::uint64_t shots,
                                 Rng& rng) {
  if (shots < 1) throw Error(ErrorKind::Validation, "fidelity_sampled: shots must be >= 1");
  if (u.n_qubits() != v.n_qubits()) {
    throw Error(ErrorKind::Dimension, "fidelity_sampled: qubit counts differ");
  }
  const StateVector s = simulate(concat(u, inverse(v)));
  std::vector<double> cdf(s.amplitudes.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = acc += std::norm(s.amplitudes[i]);
  std::uint64_t zeros = 0;
  for (std::uint64_t t = 0; t < shots; ++t) {
    const double x = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.begin()) ++zeros;
  }
  const double p = static_cast<double>(zeros) / static_cast<double>(shots);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(shots))};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

VerifyMode parse_verify_mode(const std::string& name) {
  if (name == "exact") return VerifyMode::Exact;
  if (name == "sampled") return VerifyMode::Sampled;
  throw Error(ErrorKind::Usage, "unknown verify mode '" + name + "'");
}

std::uint64_t default_shots(double gap_eps) {
  return static_cast<std::uint64_t>(std::ceil(16.0 / (gap_eps * gap_eps)));
}

EquivalenceVerdict decide_equivalence(const Circuit& u, const Circuit& v, double gap_eps,
                                      VerifyMode mode, std::optional<std::uint64_t> shots,
                                      Seed seed) {
  if (!(gap_eps > 0.0 && gap_eps < 0.5)) {
    throw Error(ErrorKind::Validation, "decide_equivalence: gap_eps must lie in (0, 1/2)");
  }
  EquivalenceVerdict out;
  if (mode == VerifyMode::Exact) {
    const double f = fidelity_exact(u, v);
    out.fidelity_estimate = f;
    if (f >= 1.0 - gap_eps) {
      out.verdict = Verdict::Yes;
    } else if (f <= 1.0 - 2.0 * gap_eps) {
      out.verdict = Verdict::No;
    } else {
      out.verdict = Verdict::Indeterminate;
    }
    return out;
  }
  const std::uint64_t n_shots = shots.value_or(default_shots(gap_eps));
  Rng rng(seed);
  const SampledFidelity est = fidelity_sampled(u, v, n_shots, rng);
  const double mid = 1.0 - 1.5 * gap_eps;
  out.fidelity_estimate = est.estimate;
  out.shots = n_shots;
  out.std_error = est.std_error;
  if (std::abs(est.estimate - mid) <= 2.0 * est.std_error) {
    out.verdict = Verdict::Indeterminate;
  } else {
    out.verdict = est.estimate > mid ? Verdict::Yes : Verdict::No;
  }
  return out;
}

}  // namespace unopt

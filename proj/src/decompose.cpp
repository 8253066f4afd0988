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

#include "unopt/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "unopt/error.hpp"
#include "unopt/synthesis.hpp"

namespace unopt {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double r = 1.0 / std::numbers::sqrt2;
  m << r, r, r, -r;
  return m;
}

ComplexMatrix rx(double t) {
  ComplexMatrix m(2, 2);
  m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
  return m;
}

ComplexMatrix ry(double t) {
  ComplexMatrix m(2, 2);
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

ComplexMatrix rz(double t) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -t / 2);
  m(1, 1) = std::polar(1.0, t / 2);
  return m;
}

/// exp(i t P) for a Pauli P.
ComplexMatrix pauli_exp(const ComplexMatrix& p, double t) {
  return std::cos(t) * ComplexMatrix::Identity(2, 2) + kI * std::sin(t) * p;
}

Gate raw1(Qubit q, ComplexMatrix m) { return Gate{{q}, std::move(m), "RAW", std::nullopt}; }

/// Fuses runs of single-qubit gates per wire into U3 gates. Pending gates
/// are flushed in ascending qubit order.
class SingleQubitFuser {
 public:
  explicit SingleQubitFuser(std::vector<Gate>& out) : out_(out) {}

  void push(const Gate& g) {
    if (g.arity() == 1) {
      auto [it, inserted] = pending_.try_emplace(g.qubits[0], g.matrix);
      if (!inserted) it->second = g.matrix * it->second;
      return;
    }
    for (Qubit q : g.qubits) flush(q);
    out_.push_back(g);
  }

  void flush_all() {
    for (auto& [q, m] : pending_) out_.push_back(to_u3(q, m));
    pending_.clear();
  }

 private:
  void flush(Qubit q) {
    auto it = pending_.find(q);
    if (it == pending_.end()) return;
    out_.push_back(to_u3(q, it->second));
    pending_.erase(it);
  }

  std::vector<Gate>& out_;
  std::map<Qubit, ComplexMatrix> pending_;
};

/// Real orthogonal P (det +1) with P^T m P diagonal, for complex symmetric
/// unitary m. Real and imaginary parts commute, so a generic real
/// combination of them shares their eigenvectors.
Eigen::Matrix4d real_diagonalizer(const ComplexMatrix& m) {
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();
  Rng rng(Seed{0x5eed0fcafeULL});
  for (int attempt = 0; attempt < 32; ++attempt) {
    const double a = attempt == 0 ? 1.0 : rng.uniform() * 2.0 - 1.0;
    const double b = attempt == 0 ? 0.5772156649 : rng.uniform() * 2.0 - 1.0;
    Eigen::Matrix4d s = a * re + b * im;
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(s);
    Eigen::Matrix4d p = es.eigenvectors();
    const ComplexMatrix d = p.transpose().cast<Complex>() * m * p.cast<Complex>();
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) off = std::max(off, std::abs(d(i, j)));
      }
    }
    if (off < 1e-11) {
      if (p.determinant() < 0) p.col(0) *= -1.0;
      return p;
    }
  }
  throw Error(ErrorKind::Numerical, "cartan_decompose: simultaneous diagonalization failed");
}

std::vector<Gate> kak_core(const std::array<double, 3>& c, Qubit q0, Qubit q1, int cx_count) {
  std::vector<Gate> g;
  const ComplexMatrix& X = pauli_x();
  const ComplexMatrix& Z = pauli_z();
  auto two_cx = [&](double a, double b) {
    // CX (exp(i a X) (x) exp(i b Z)) CX == exp(i (a XX + b ZZ))
    g.push_back(cx_gate(q0, q1));
    g.push_back(raw1(q0, pauli_exp(X, a)));
    g.push_back(raw1(q1, pauli_exp(Z, b)));
    g.push_back(cx_gate(q0, q1));
  };
  auto both = [&](const ComplexMatrix& m) {
    g.push_back(raw1(q0, m));
    g.push_back(raw1(q1, m));
  };
  const auto [x, y, z] = c;
  switch (cx_count) {
    case 0:
      break;
    case 1: {
      int axis = 0;
      for (int i = 1; i < 3; ++i) {
        if (std::abs(c[static_cast<std::size_t>(i)]) > std::abs(c[static_cast<std::size_t>(axis)])) axis = i;
      }
      const double s = c[static_cast<std::size_t>(axis)] > 0 ? 1.0 : -1.0;
      // Conjugation taking ZZ to the active axis.
      ComplexMatrix pre = ComplexMatrix::Identity(2, 2), post = pre;
      if (axis == 0) pre = post = hadamard();
      if (axis == 1) {
        post = rx(pi / 2);
        pre = rx(-pi / 2);
      }
      both(pre);
      // exp(i s pi/4 ZZ) ~ CZ * (exp(i s pi/4 Z) (x) exp(i s pi/4 Z))
      both(pauli_exp(Z, s * pi / 4));
      g.push_back(raw1(q1, hadamard()));
      g.push_back(cx_gate(q0, q1));
      g.push_back(raw1(q1, hadamard()));
      both(post);
      break;
    }
    case 2: {
      const double tol = 1e-9;
      if (std::abs(y) <= tol) {
        two_cx(x, z);
      } else if (std::abs(x) <= tol) {
        // (S (x) S) maps XX to YY.
        ComplexMatrix s = ComplexMatrix::Identity(2, 2);
        s(1, 1) = kI;
        both(s.adjoint());
        two_cx(y, z);
        both(s);
      } else {
        // (Rx(pi/2) (x) Rx(pi/2)) maps ZZ to YY.
        both(rx(-pi / 2));
        two_cx(x, y);
        both(rx(pi / 2));
      }
      break;
    }
    default:
      g.push_back(raw1(q1, rz(pi / 2)));
      g.push_back(cx_gate(q1, q0));
      g.push_back(raw1(q0, rz(-2 * z + pi / 2)));
      g.push_back(raw1(q1, ry(pi / 2 - 2 * x)));
      g.push_back(cx_gate(q0, q1));
      g.push_back(raw1(q1, ry(2 * y - pi / 2)));
      g.push_back(cx_gate(q1, q0));
      g.push_back(raw1(q0, rz(-pi / 2)));
      break;
  }
  return g;
}

double block_residual(const ComplexMatrix& u, std::span<const Gate> gates,
                      std::span<const Qubit> support) {
  return phase_distance(local_unitary(gates, support), u);
}

void require_unitary(const ComplexMatrix& u, Eigen::Index dim, const char* what) {
  if (u.rows() != dim || u.cols() != dim) {
    throw Error(ErrorKind::Dimension, std::string(what) + ": expected " + std::to_string(dim) +
                                          "x" + std::to_string(dim) + " input");
  }
  if (!is_unitary(u)) {
    throw Error(ErrorKind::Validation, std::string(what) + ": input is not unitary (error " +
                                           std::to_string(unitarity_error(u)) + ")");
  }
}

CosineSine csd_attempt(const ComplexMatrix& u) {
  const Eigen::Index m = u.rows() / 2;
  const ComplexMatrix u00 = u.topLeftCorner(m, m);
  const ComplexMatrix u01 = u.topRightCorner(m, m);
  const ComplexMatrix u10 = u.bottomLeftCorner(m, m);
  const ComplexMatrix u11 = u.bottomRightCorner(m, m);

  Eigen::JacobiSVD<ComplexMatrix> svd(u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd cosines = svd.singularValues();  // descending
  CosineSine out;
  out.l0 = svd.matrixU();
  out.r0 = svd.matrixV().adjoint();

  // u10 * r0^dagger == l1 * S has orthogonal columns. Orthonormalize them
  // largest-first so near-zero columns are completed against the rest.
  const ComplexMatrix x = u10 * svd.matrixV();
  const ComplexMatrix xr = x.rowwise().reverse();
  Eigen::HouseholderQR<ComplexMatrix> qr(xr);
  const ComplexMatrix q = qr.householderQ();
  ComplexMatrix l1r(m, m);
  Eigen::VectorXd sines_r(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex d = qr.matrixQR()(k, k);
    const double mag = std::abs(d);
    l1r.col(k) = q.col(k) * (mag > 0.0 ? d / mag : Complex(1.0, 0.0));
    sines_r(k) = mag;
  }
  out.l1 = l1r.rowwise().reverse();
  const Eigen::VectorXd sines = sines_r.reverse();

  out.theta.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) out.theta(k) = std::atan2(sines(k), cosines(k));

  const Eigen::VectorXd ct = out.theta.array().cos();
  const Eigen::VectorXd st = out.theta.array().sin();
  out.r1 = ct.asDiagonal() * (out.l1.adjoint() * u11) - st.asDiagonal() * (out.l0.adjoint() * u01);

  // Canonical order: ascending angles.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return out.theta(a) < out.theta(b); });
  CosineSine sorted;
  sorted.theta.resize(m);
  sorted.l0.resize(m, m);
  sorted.l1.resize(m, m);
  sorted.r0.resize(m, m);
  sorted.r1.resize(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    sorted.theta(k) = out.theta(src);
    sorted.l0.col(k) = out.l0.col(src);
    sorted.l1.col(k) = out.l1.col(src);
    sorted.r0.row(k) = out.r0.row(src);
    sorted.r1.row(k) = out.r1.row(src);
  }
  return sorted;
}

bool csd_ok(const ComplexMatrix& u, const CosineSine& c) {
  constexpr double tol = 1e-10;
  return unitarity_error(c.l0) < tol && unitarity_error(c.l1) < tol &&
         unitarity_error(c.r0) < tol && unitarity_error(c.r1) < tol &&
         (reconstruct(c) - u).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

std::array<double, 3> u3_angles(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(ErrorKind::Dimension, "u3_angles: expected a 2x2 matrix");
  }
  const Complex det = m.determinant();
  const ComplexMatrix su = m / std::sqrt(det);
  const double theta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
  const double sum = 2.0 * std::arg(su(1, 1));
  const double diff = 2.0 * std::arg(su(1, 0));
  return {theta, 0.5 * (sum + diff), 0.5 * (sum - diff)};
}

Gate to_u3(Qubit q, const ComplexMatrix& m) {
  const auto [theta, phi, lambda] = u3_angles(m);
  return u3_gate(q, theta, phi, lambda);
}

std::pair<ComplexMatrix, ComplexMatrix> factor_kron(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw Error(ErrorKind::Dimension, "factor_kron: expected a 4x4 matrix");
  }
  Eigen::Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  const Eigen::Index i0 = r >> 1, k0 = r & 1, j0 = c >> 1, l0 = c & 1;
  ComplexMatrix low(2, 2), high(2, 2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    for (Eigen::Index l = 0; l < 2; ++l) low(k, l) = m(2 * i0 + k, 2 * j0 + l);
  }
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) high(i, j) = m(2 * i + k0, 2 * j + l0) / low(k0, l0);
  }
  const Complex s = std::sqrt(low.determinant());
  low /= s;
  high *= s;
  if ((kron(high, low) - m).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorKind::Numerical, "factor_kron: matrix is not a tensor product");
  }
  return {high, low};
}

const ComplexMatrix& magic_basis() {
  static const ComplexMatrix m = [] {
    ComplexMatrix b(4, 4);
    const double r = 1.0 / std::numbers::sqrt2;
    b << r, 0.0, 0.0, kI * r,
         0.0, kI * r, r, 0.0,
         0.0, kI * r, -r, 0.0,
         r, 0.0, 0.0, -kI * r;
    return b;
  }();
  return m;
}

ComplexMatrix canonical_gate(double x, double y, double z) {
  // XX, YY, ZZ commute and square to I.
  const ComplexMatrix xx = kron(pauli_x(), pauli_x());
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexMatrix zz = kron(pauli_z(), pauli_z());
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  auto e = [&](const ComplexMatrix& p, double t) -> ComplexMatrix {
    return std::cos(t) * id + kI * std::sin(t) * p;
  };
  return e(xx, x) * e(yy, y) * e(zz, z);
}

CartanFactors cartan_decompose(const ComplexMatrix& u) {
  require_unitary(u, 4, "cartan_decompose");
  const ComplexMatrix& mb = magic_basis();
  const ComplexMatrix um = mb.adjoint() * u * mb;
  const ComplexMatrix sym = um.transpose() * um;
  const Eigen::Matrix4d p = real_diagonalizer(sym);
  const ComplexMatrix pc = p.cast<Complex>();
  const ComplexMatrix lam = pc.transpose() * sym * pc;

  Eigen::Vector4cd d;
  for (int j = 0; j < 4; ++j) d(j) = std::sqrt(lam(j, j));
  ComplexMatrix o1c = um * pc * d.cwiseInverse().asDiagonal();
  Eigen::Matrix4d o1 = o1c.real();
  if (o1c.imag().cwiseAbs().maxCoeff() > 1e-8) {
    throw Error(ErrorKind::Numerical, "cartan_decompose: left factor is not real");
  }
  if (o1.determinant() < 0) {
    o1.col(0) *= -1.0;
    d(0) = -d(0);
  }

  // Coordinates from the eigenphases: A = e^{i g} exp(i(x XX + y YY + z ZZ)).
  const std::array<ComplexMatrix, 3> paulis{kron(pauli_x(), pauli_x()), kron(pauli_y(), pauli_y()),
                                            kron(pauli_z(), pauli_z())};
  Eigen::Matrix4d h;
  for (int j = 0; j < 4; ++j) {
    h(j, 0) = 1.0;
    for (int p_i = 0; p_i < 3; ++p_i) {
      h(j, p_i + 1) = (mb.adjoint() * paulis[static_cast<std::size_t>(p_i)] * mb)(j, j).real();
    }
  }
  Eigen::Vector4d phases;
  for (int j = 0; j < 4; ++j) phases(j) = std::arg(d(j));
  const Eigen::Vector4d sol = h.fullPivLu().solve(phases);

  CartanFactors f;
  Complex phase = std::polar(1.0, sol(0));
  ComplexMatrix k1 = mb * o1.cast<Complex>() * mb.adjoint();
  for (int p_i = 0; p_i < 3; ++p_i) {
    double c = sol(p_i + 1);
    long k = std::lround(c / (pi / 2));
    c -= static_cast<double>(k) * (pi / 2);
    if (c <= -pi / 4 + 1e-13) {
      c += pi / 2;
      --k;
    }
    f.coords[static_cast<std::size_t>(p_i)] = c;
    // exp(i k pi/2 P) == i^k P^k
    const long km = ((k % 4) + 4) % 4;
    phase *= std::pow(kI, static_cast<int>(km));
    if (km % 2 == 1) k1 = k1 * paulis[static_cast<std::size_t>(p_i)];
  }
  auto [h1, l1] = factor_kron(k1);
  auto [h2, l2] = factor_kron(mb * pc.transpose() * mb.adjoint());
  f.k1_high = std::move(h1);
  f.k1_low = std::move(l1);
  f.k2_high = std::move(h2);
  f.k2_low = std::move(l2);
  f.phase = phase;
  return f;
}

int cx_count_for(const std::array<double, 3>& coords, double tol) {
  int nonzero = 0;
  bool quarter = false;
  for (double c : coords) {
    if (std::abs(c) > tol) {
      ++nonzero;
      quarter = std::abs(std::abs(c) - pi / 4) <= tol;
    }
  }
  if (nonzero == 0) return 0;
  if (nonzero == 1 && quarter) return 1;
  if (nonzero < 3) return 2;
  return 3;
}

KakResult kak_decompose(const ComplexMatrix& u, std::array<Qubit, 2> qubits) {
  const CartanFactors f = cartan_decompose(u);
  const auto [q0, q1] = qubits;
  const int cx = cx_count_for(f.coords);

  std::vector<Gate> raw;
  raw.push_back(raw1(q0, f.k2_high));
  raw.push_back(raw1(q1, f.k2_low));
  for (Gate& g : kak_core(f.coords, q0, q1, cx)) raw.push_back(std::move(g));
  raw.push_back(raw1(q0, f.k1_high));
  raw.push_back(raw1(q1, f.k1_low));

  KakResult out;
  SingleQubitFuser fuser(out.gates);
  for (const Gate& g : raw) fuser.push(g);
  fuser.flush_all();
  out.cx_count = cx;

  const std::array<Qubit, 2> support{q0, q1};
  const double residual = block_residual(u, out.gates, support);
  if (residual > 1e-9) {
    throw Error(ErrorKind::Numerical,
                "kak_decompose: reconstruction residual " + std::to_string(residual));
  }
  return out;
}

ComplexMatrix cs_matrix(const Eigen::VectorXd& theta) {
  const Eigen::Index m = theta.size();
  ComplexMatrix cs = ComplexMatrix::Zero(2 * m, 2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double c = std::cos(theta(k)), s = std::sin(theta(k));
    cs(k, k) = c;
    cs(k, m + k) = -s;
    cs(m + k, k) = s;
    cs(m + k, m + k) = c;
  }
  return cs;
}

ComplexMatrix reconstruct(const CosineSine& c) {
  const Eigen::Index m = c.theta.size();
  ComplexMatrix l = ComplexMatrix::Zero(2 * m, 2 * m), r = l;
  l.topLeftCorner(m, m) = c.l0;
  l.bottomRightCorner(m, m) = c.l1;
  r.topLeftCorner(m, m) = c.r0;
  r.bottomRightCorner(m, m) = c.r1;
  return l * cs_matrix(c.theta) * r;
}

CosineSine cosine_sine_decompose(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2 || u.rows() % 2 != 0) {
    throw Error(ErrorKind::Dimension, "cosine_sine_decompose: need an even square matrix");
  }
  require_unitary(u, u.rows(), "cosine_sine_decompose");
  CosineSine c = csd_attempt(u);
  if (csd_ok(u, c)) return c;

  // Re-randomize the right basis: u * diag(q0, q1) has generic blocks.
  const Eigen::Index m = u.rows() / 2;
  Rng rng(Seed{0xc5dULL});
  for (int attempt = 0; attempt < 4; ++attempt) {
    const ComplexMatrix q0 = haar_random_unitary(static_cast<std::size_t>(m), rng);
    const ComplexMatrix q1 = haar_random_unitary(static_cast<std::size_t>(m), rng);
    ComplexMatrix rot = ComplexMatrix::Zero(2 * m, 2 * m);
    rot.topLeftCorner(m, m) = q0;
    rot.bottomRightCorner(m, m) = q1;
    c = csd_attempt(u * rot);
    c.r0 = c.r0 * q0.adjoint();
    c.r1 = c.r1 * q1.adjoint();
    if (csd_ok(u, c)) return c;
  }
  throw Error(ErrorKind::Numerical, "cosine_sine_decompose: loss of orthogonality");
}

Demultiplexed demultiplex(const ComplexMatrix& u0, const ComplexMatrix& u1) {
  if (u0.rows() != u1.rows() || u0.cols() != u1.cols() || u0.rows() != u0.cols()) {
    throw Error(ErrorKind::Dimension, "demultiplex: blocks must be square and equal-sized");
  }
  // u0 u1^dagger is normal, so its Schur form is diagonal.
  Eigen::ComplexSchur<ComplexMatrix> schur(u0 * u1.adjoint());
  const ComplexMatrix& t = schur.matrixT();
  const double off = (t - ComplexMatrix(t.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (off > 1e-9) {
    throw Error(ErrorKind::Numerical, "demultiplex: Schur form is not diagonal");
  }
  Demultiplexed out;
  out.v = schur.matrixU();
  out.d = t.diagonal().array().sqrt();
  out.w = out.d.asDiagonal() * out.v.adjoint() * u1;
  return out;
}

std::vector<Gate> multiplexed_rotation(RotationAxis axis, std::span<const double> angles,
                                       std::span<const Qubit> controls, Qubit target) {
  const std::size_t c = controls.size();
  const std::size_t count = std::size_t{1} << c;
  if (angles.size() != count) {
    throw Error(ErrorKind::Dimension, "multiplexed_rotation: need 2^controls angles");
  }
  auto rot = [&](double t) { return axis == RotationAxis::Y ? ry(t) : rz(t); };
  const char* label = axis == RotationAxis::Y ? "RY" : "RZ";
  if (c == 0) return {Gate{{target}, rot(angles[0]), label, std::nullopt}};

  // Gray-code walk: after rotation i a CX flips the target on the control
  // bit that changes between gray(i) and gray(i + 1).
  std::vector<unsigned> flip(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g0 = i ^ (i >> 1);
    const std::size_t j = (i + 1) % count;
    const std::size_t g1 = j ^ (j >> 1);
    flip[i] = static_cast<unsigned>(std::countr_zero(g0 ^ g1));
  }
  // Rotation i reaches control value v with sign (-1)^(parity of earlier flips).
  Eigen::MatrixXd sign(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (std::size_t v = 0; v < count; ++v) {
    unsigned parity = 0;
    for (std::size_t i = 0; i < count; ++i) {
      sign(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(i)) = parity ? -1.0 : 1.0;
      parity ^= (v >> flip[i]) & 1U;
    }
  }
  Eigen::VectorXd theta(static_cast<Eigen::Index>(count));
  for (std::size_t v = 0; v < count; ++v) theta(static_cast<Eigen::Index>(v)) = angles[v];
  // Columns are distinct characters of Z_2^c, so sign^T sign == count * I.
  const Eigen::VectorXd alpha = sign.transpose() * theta / static_cast<double>(count);

  std::vector<Gate> gates;
  for (std::size_t i = 0; i < count; ++i) {
    gates.push_back(Gate{{target}, rot(alpha(static_cast<Eigen::Index>(i))), label, std::nullopt});
    gates.push_back(cx_gate(controls[c - 1 - flip[i]], target));
  }
  return gates;
}

ThreeQubitDecomposition decompose_three_qubit(const ComplexMatrix& u, std::array<Qubit, 3> qubits) {
  require_unitary(u, 8, "decompose_three_qubit");
  const auto [q0, q1, q2] = qubits;
  const CosineSine csd = cosine_sine_decompose(u);
  const Demultiplexed right = demultiplex(csd.r0, csd.r1);
  const Demultiplexed left = demultiplex(csd.l0, csd.l1);
  const std::array<Qubit, 2> controls{q1, q2};

  auto rz_angles = [](const Eigen::VectorXcd& d) {
    std::vector<double> a(static_cast<std::size_t>(d.size()));
    for (Eigen::Index j = 0; j < d.size(); ++j) a[static_cast<std::size_t>(j)] = -2.0 * std::arg(d(j));
    return a;
  };
  std::vector<double> ry_angles(4);
  for (Eigen::Index j = 0; j < 4; ++j) ry_angles[static_cast<std::size_t>(j)] = 2.0 * csd.theta(j);

  std::vector<Gate> raw;
  auto append = [&](std::vector<Gate> gs) {
    for (Gate& g : gs) raw.push_back(std::move(g));
  };
  raw.push_back(Gate{{q1, q2}, right.w, "U2Q", std::nullopt});
  append(multiplexed_rotation(RotationAxis::Z, rz_angles(right.d), controls, q0));
  raw.push_back(Gate{{q1, q2}, right.v, "U2Q", std::nullopt});
  append(multiplexed_rotation(RotationAxis::Y, ry_angles, controls, q0));
  raw.push_back(Gate{{q1, q2}, left.w, "U2Q", std::nullopt});
  append(multiplexed_rotation(RotationAxis::Z, rz_angles(left.d), controls, q0));
  raw.push_back(Gate{{q1, q2}, left.v, "U2Q", std::nullopt});

  const int width = std::max({q0, q1, q2}) + 1;
  const Circuit merged = greedy_synthesize(Circuit(width, std::move(raw)), 2);

  ThreeQubitDecomposition out;
  out.gates = merged.gates();
  out.gate_count = out.gates.size();
  const std::array<Qubit, 3> support{q0, q1, q2};
  const double residual = block_residual(u, out.gates, support);
  if (residual > 1e-9) {
    throw Error(ErrorKind::Numerical,
                "decompose_three_qubit: reconstruction residual " + std::to_string(residual));
  }
  return out;
}

Circuit to_u3cx_basis(const Circuit& c) {
  const ComplexMatrix cx = cx_matrix();
  std::vector<Gate> gates;
  SingleQubitFuser fuser(gates);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c[i];
    switch (g.arity()) {
      case 1:
        fuser.push(g);
        break;
      case 2:
        if (phase_distance(g.matrix, cx) < 1e-12) {
          fuser.push(cx_gate(g.qubits[0], g.qubits[1]));
        } else {
          for (const Gate& k : kak_decompose(g.matrix, {g.qubits[0], g.qubits[1]}).gates) {
            fuser.push(k);
          }
        }
        break;
      default:
        throw Error(ErrorKind::Validation, "to_u3cx_basis: gate " + std::to_string(i) +
                                               " acts on 3 qubits; decompose it first");
    }
  }
  fuser.flush_all();
  return Circuit(c.n_qubits(), std::move(gates));
}

}  // namespace unopt

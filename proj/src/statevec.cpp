// Copyright 2026 The ewva Authors
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

#include "ewva/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "ewva/errors.hpp"
#include "ewva/kernels.hpp"
#include "ewva/tolerances.hpp"

namespace ewva {
namespace {

void check_register(const Register& reg) {
  if (reg.size() > tol::kMaxQubits) {
    throw InvalidArgument("register of " + std::to_string(reg.size()) +
                          " qubits exceeds the cap of " + std::to_string(tol::kMaxQubits));
  }
  std::unordered_set<int> seen;
  for (int q : reg) {
    if (!seen.insert(q).second) {
      throw RegisterMismatch("qubit label " + std::to_string(q) + " repeated in register");
    }
  }
}

std::size_t position_of(const Register& reg, int label) {
  const auto it = std::find(reg.begin(), reg.end(), label);
  if (it == reg.end()) {
    throw RegisterMismatch("qubit " + std::to_string(label) + " not in register");
  }
  return static_cast<std::size_t>(it - reg.begin());
}

std::vector<unsigned> positions_of(const Register& reg, const Register& labels) {
  std::vector<unsigned> out;
  out.reserve(labels.size());
  for (int q : labels) out.push_back(static_cast<unsigned>(position_of(reg, q)));
  return out;
}

bool is_hermitian(const Eigen::MatrixXcd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol::kHermitian * scale;
}

void require_same_register(const Ket& a, const Ket& b) {
  if (a.reg() != b.reg()) throw RegisterMismatch("kets live on different registers");
}

}  // namespace

// ---- Ket -------------------------------------------------------------------

Ket::Ket(Register reg, std::vector<Complex> amplitudes)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  check_register(reg_);
  if (amps_.size() != (std::size_t{1} << reg_.size())) {
    throw InvalidArgument("ket of " + std::to_string(amps_.size()) +
                          " amplitudes does not match a register of " +
                          std::to_string(reg_.size()) + " qubits");
  }
}

Ket Ket::basis(Register reg, std::uint64_t index) {
  const std::size_t dim = std::size_t{1} << reg.size();
  if (index >= dim) {
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range");
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return Ket(std::move(reg), std::move(amps));
}

Ket Ket::zero(Register reg) {
  const std::size_t dim = std::size_t{1} << reg.size();
  return Ket(std::move(reg), std::vector<Complex>(dim));
}

Ket Ket::product(const Register& reg, std::span<const std::array<Complex, 2>> factors) {
  if (factors.size() != reg.size()) throw InvalidArgument("one factor per qubit required");
  std::vector<Complex> amps(std::size_t{1} << reg.size(), Complex{1.0});
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t k = 0; k < reg.size(); ++k) amps[i] *= factors[k][(i >> k) & 1U];
  }
  return Ket(reg, std::move(amps));
}

double Ket::norm_squared() const { return kernels::norm2(amps_); }
double Ket::norm() const { return std::sqrt(norm_squared()); }

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw VanishingBranch("cannot normalize a zero vector");
  return scaled(1.0 / n);
}

Ket Ket::scaled(Complex s) const {
  std::vector<Complex> amps(amps_);
  for (auto& a : amps) a *= s;
  return Ket(reg_, std::move(amps));
}

Ket Ket::operator+(const Ket& other) const {
  require_same_register(*this, other);
  std::vector<Complex> amps(amps_);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += other.amps_[i];
  return Ket(reg_, std::move(amps));
}

Ket Ket::operator-(const Ket& other) const { return *this + other.scaled(-1.0); }

Ket Ket::permuted(const Register& order) const {
  if (order.size() != reg_.size()) throw RegisterMismatch("permutation size mismatch");
  const std::vector<unsigned> src = positions_of(reg_, order);
  std::vector<Complex> amps(amps_.size());
  for (std::size_t j = 0; j < amps.size(); ++j) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < order.size(); ++k) i |= ((j >> k) & 1U) << src[k];
    amps[j] = amps_[i];
  }
  return Ket(order, std::move(amps));
}

// ---- Operator --------------------------------------------------------------

Operator::Operator(Register reg, Eigen::MatrixXcd matrix) : reg_(std::move(reg)), m_(std::move(matrix)) {
  check_register(reg_);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg_.size());
  if (m_.rows() != m_.cols() || m_.rows() != dim) {
    throw InvalidArgument("operator matrix must be square with dimension 2^(register size)");
  }
  hermitian_ = is_hermitian(m_);
}

Operator Operator::identity(const Register& reg) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.size());
  return Operator(reg, Eigen::MatrixXcd::Identity(dim, dim));
}

Operator Operator::from_2x2(int qubit, const Mat2& m) {
  Eigen::MatrixXcd mat(2, 2);
  mat << m[0], m[1], m[2], m[3];
  return Operator({qubit}, std::move(mat));
}

Operator Operator::pauli_x(int qubit) { return from_2x2(qubit, {0.0, 1.0, 1.0, 0.0}); }
Operator Operator::pauli_y(int qubit) { return from_2x2(qubit, {0.0, -kI, kI, 0.0}); }
Operator Operator::pauli_z(int qubit) { return from_2x2(qubit, {1.0, 0.0, 0.0, -1.0}); }

Operator Operator::projector(int qubit, int bit) {
  return bit ? from_2x2(qubit, {0.0, 0.0, 0.0, 1.0}) : from_2x2(qubit, {1.0, 0.0, 0.0, 0.0});
}

Operator Operator::diagonal(Register reg, std::span<const double> entries) {
  const std::size_t dim = std::size_t{1} << reg.size();
  if (entries.size() != dim) throw InvalidArgument("diagonal length mismatch");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  return Operator(std::move(reg), std::move(m));
}

Operator Operator::outer(const Ket& ket, const Ket& bra) {
  require_same_register(ket, bra);
  const auto dim = static_cast<Eigen::Index>(ket.dim());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = ket[static_cast<std::size_t>(r)] * std::conj(bra[static_cast<std::size_t>(c)]);
    }
  }
  return Operator(ket.reg(), std::move(m));
}

Operator Operator::embed(const Register& target) const {
  if (target == reg_) return *this;
  const std::size_t dim = std::size_t{1} << target.size();
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m(d, d);
  for (std::size_t c = 0; c < dim; ++c) {
    const Ket col = apply(*this, Ket::basis(target, c));
    for (std::size_t r = 0; r < dim; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
  }
  return Operator(target, std::move(m));
}

Operator Operator::relabeled(Register reg) const {
  if (reg.size() != reg_.size()) throw RegisterMismatch("relabel must keep the register size");
  return Operator(std::move(reg), m_);
}

Operator Operator::adjoint() const { return Operator(reg_, m_.adjoint()); }
Operator Operator::scaled(Complex s) const { return Operator(reg_, m_ * s); }

Operator Operator::plus_identity(double c) const {
  Eigen::MatrixXcd m = m_;
  m.diagonal().array() += c;
  return Operator(reg_, std::move(m));
}

Operator Operator::operator+(const Operator& rhs) const {
  const Register u = register_union(reg_, rhs.reg_);
  return Operator(u, embed(u).m_ + rhs.embed(u).m_);
}

Operator Operator::operator-(const Operator& rhs) const { return *this + rhs.scaled(-1.0); }

Operator Operator::operator*(const Operator& rhs) const {
  const Register u = register_union(reg_, rhs.reg_);
  return Operator(u, embed(u).m_ * rhs.embed(u).m_);
}

Spectrum Operator::spectrum() const {
  if (!hermitian_) throw NonHermitian("spectrum requires a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_);
  Spectrum s;
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    s.eigenvalues.push_back(vals(k));
    std::vector<Complex> amps(static_cast<std::size_t>(vecs.rows()));
    for (Eigen::Index r = 0; r < vecs.rows(); ++r) amps[static_cast<std::size_t>(r)] = vecs(r, k);
    // Canonical phase: the largest component is real and positive.
    const auto big = std::max_element(amps.begin(), amps.end(), [](Complex x, Complex y) {
      return std::abs(x) < std::abs(y);
    });
    const Complex phase = std::conj(*big) / std::abs(*big);
    for (auto& a : amps) a *= phase;
    s.eigenkets.emplace_back(reg_, std::move(amps));
  }
  return s;
}

Operator Spectrum::reconstruct(const Register& reg) const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    m += eigenvalues[k] * Operator::outer(eigenkets[k], eigenkets[k]).matrix();
  }
  return Operator(reg, std::move(m));
}

// ---- state operations ------------------------------------------------------

Register register_difference(const Register& reg, const Register& remove) {
  Register out;
  for (int q : reg) {
    if (std::find(remove.begin(), remove.end(), q) == remove.end()) out.push_back(q);
  }
  return out;
}

Register register_union(const Register& a, const Register& b) {
  Register out = a;
  for (int q : b) {
    if (std::find(a.begin(), a.end(), q) == a.end()) out.push_back(q);
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  for (int q : b.reg()) {
    if (std::find(a.reg().begin(), a.reg().end(), q) != a.reg().end()) {
      throw RegisterMismatch("tensor product of overlapping registers");
    }
  }
  Register reg = a.reg();
  reg.insert(reg.end(), b.reg().begin(), b.reg().end());
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    for (std::size_t i = 0; i < a.dim(); ++i) amps[i + j * a.dim()] = a[i] * b[j];
  }
  return Ket(std::move(reg), std::move(amps));
}

Ket apply(const Operator& op, const Ket& state) {
  const std::vector<unsigned> bits = positions_of(state.reg(), op.reg());
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  const Eigen::MatrixXcd& m = op.matrix();
  if (bits.size() == 1) {
    kernels::apply_1q(amps, bits[0], {m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
  } else {
    kernels::apply_dense(amps, bits, std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())));
  }
  return Ket(state.reg(), std::move(amps));
}

Complex inner(const Ket& a, const Ket& b) {
  require_same_register(a, b);
  return kernels::inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const Ket& a, const Ket& b) {
  const double na = a.norm_squared();
  const double nb = b.norm_squared();
  if (!(na > 0.0) || !(nb > 0.0)) throw VanishingBranch("fidelity with a zero vector");
  return std::norm(inner(a, b)) / (na * nb);
}

Complex expectation_raw(const Ket& state, const Operator& op) {
  return inner(state, apply(op, state));
}

double expectation(const Ket& state, const Operator& op) {
  if (!op.hermitian()) throw NonHermitian("expectation requires a Hermitian operator");
  if (!state.is_normalized(tol::kAccumulated)) throw InvalidArgument("expectation requires a normalized state");
  return expectation_raw(state, op).real();
}

double variance(const Ket& state, const Operator& op) {
  if (!op.hermitian()) throw NonHermitian("variance requires a Hermitian operator");
  if (!state.is_normalized(tol::kAccumulated)) throw InvalidArgument("variance requires a normalized state");
  const Ket v = apply(op, state);
  const double second = v.norm_squared();
  const double first = inner(state, v).real();
  return std::max(0.0, second - first * first);
}

Projection project(const Ket& state, const Ket& outcome) {
  if (!outcome.is_normalized(tol::kAccumulated)) {
    throw InvalidArgument("projection outcome must be normalized");
  }
  const std::vector<unsigned> sub = positions_of(state.reg(), outcome.reg());
  const Register rest = register_difference(state.reg(), outcome.reg());
  const std::vector<unsigned> rest_bits = positions_of(state.reg(), rest);

  std::vector<Complex> amps(std::size_t{1} << rest.size());
  for (std::size_t r = 0; r < amps.size(); ++r) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < rest_bits.size(); ++k) base |= ((r >> k) & 1U) << rest_bits[k];
    Complex acc{};
    for (std::size_t o = 0; o < outcome.dim(); ++o) {
      std::size_t idx = base;
      for (std::size_t k = 0; k < sub.size(); ++k) idx |= ((o >> k) & 1U) << sub[k];
      acc += std::conj(outcome[o]) * state[idx];
    }
    amps[r] = acc;
  }
  Ket residual(rest, std::move(amps));
  const double p = residual.norm_squared();
  return {std::move(residual), p};
}

Operator exp_hermitian(const Operator& h, double t) {
  if (!h.hermitian()) throw NonHermitian("exp_hermitian requires a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return Operator(h.reg(), v * phases.asDiagonal() * v.adjoint());
}

std::string to_string(const Ket& ket, int precision) {
  std::string out;
  char buf[128];
  for (std::size_t i = 0; i < ket.dim(); ++i) {
    const Complex a = ket[i];
    if (std::abs(a) == 0.0) continue;
    std::string bits;
    for (std::size_t k = ket.num_qubits(); k-- > 0;) bits += ((i >> k) & 1U) ? '1' : '0';
    std::snprintf(buf, sizeof buf, "%s(%.*g%+.*gi)|%s>", out.empty() ? "" : " + ", precision,
                  a.real(), precision, a.imag(), bits.c_str());
    out += buf;
  }
  return out.empty() ? "0" : out;
}

}  // namespace ewva

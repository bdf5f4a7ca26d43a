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

#pragma once

// Dense pure-state linear algebra over labeled qubit registers.
//
// Convention: little-endian. In a Ket with register {q0, q1, ...} the label
// at position k is bit k of the amplitude index, so register {7, 3} with
// index 2 means qubit 7 = 0 and qubit 3 = 1. Kets and Operators are
// immutable values; every operation returns a new object.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ewva/types.hpp"

namespace ewva {

class Ket {
 public:
  Ket(Register reg, std::vector<Complex> amplitudes);

  /// Computational basis state; bit k of `index` is the value of reg[k].
  static Ket basis(Register reg, std::uint64_t index);
  /// Product of single-qubit kets (alpha|0> + beta|1>) in register order.
  static Ket product(const Register& reg, std::span<const std::array<Complex, 2>> factors);
  static Ket zero(Register reg);

  const Register& reg() const { return reg_; }
  std::size_t num_qubits() const { return reg_.size(); }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  double norm_squared() const;
  bool is_normalized(double tol = 1e-12) const;
  /// Throws VanishingBranch when the norm is zero.
  Ket normalized() const;

  Ket scaled(Complex s) const;
  Ket operator+(const Ket& other) const;
  Ket operator-(const Ket& other) const;

  /// Same state with the register rearranged into `order` (a permutation).
  Ket permuted(const Register& order) const;

 private:
  Register reg_;
  std::vector<Complex> amps_;
};

struct Spectrum;

class Operator {
 public:
  Operator(Register reg, Eigen::MatrixXcd matrix);

  static Operator identity(const Register& reg);
  static Operator pauli_x(int qubit);
  static Operator pauli_y(int qubit);
  static Operator pauli_z(int qubit);
  /// |bit><bit| on one qubit.
  static Operator projector(int qubit, int bit);
  static Operator diagonal(Register reg, std::span<const double> entries);
  static Operator from_2x2(int qubit, const Mat2& m);
  /// |k><k| for a single ket (need not be normalized).
  static Operator outer(const Ket& ket, const Ket& bra);

  const Register& reg() const { return reg_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  bool hermitian() const { return hermitian_; }

  /// Matrix of the same operator on a larger register (identity elsewhere).
  Operator embed(const Register& target) const;
  /// Relabels the qubits without moving any matrix entries.
  Operator relabeled(Register reg) const;
  Operator adjoint() const;
  Operator scaled(Complex s) const;
  Operator plus_identity(double c) const;

  /// Sum on the union register (this register first, then new labels of rhs).
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  /// Composition this * rhs on the union register.
  Operator operator*(const Operator& rhs) const;

  /// Eigendecomposition; requires a Hermitian operator.
  Spectrum spectrum() const;

 private:
  Register reg_;
  Eigen::MatrixXcd m_;
  bool hermitian_ = false;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Ket> eigenkets;       // on the operator's register

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  Operator reconstruct(const Register& reg) const;
};

// ---- state operations ----------------------------------------------------

/// Kronecker product with register concatenation (a's qubits are the low bits).
Ket tensor(const Ket& a, const Ket& b);
/// Operator on a subset of the state's register, identity elsewhere.
Ket apply(const Operator& op, const Ket& state);
/// <a|b>, conjugate-linear in a. Registers must match exactly.
Complex inner(const Ket& a, const Ket& b);
/// |<a|b>|^2 / (|a|^2 |b|^2). Global phase never matters.
double fidelity(const Ket& a, const Ket& b);

/// <psi|H|psi> for a normalized state and Hermitian op.
double expectation(const Ket& state, const Operator& op);
/// <psi|O|psi> without normalization or Hermiticity requirements.
Complex expectation_raw(const Ket& state, const Operator& op);
double variance(const Ket& state, const Operator& op);

struct Projection {
  Ket residual;  // (<outcome| x 1)|state>, unnormalized
  double probability;
};

/// Contracts `outcome` (a normalized ket on `outcome.reg()`) against the
/// matching subsystem of `state`.
Projection project(const Ket& state, const Ket& outcome);

/// exp(-i t H) through the eigendecomposition of Hermitian H.
Operator exp_hermitian(const Operator& h, double t);

/// Labels of `reg` that do not occur in `remove`, order preserved.
Register register_difference(const Register& reg, const Register& remove);
/// `a` followed by the labels of `b` not already in `a`.
Register register_union(const Register& a, const Register& b);

std::string to_string(const Ket& ket, int precision = 6);

}  // namespace ewva

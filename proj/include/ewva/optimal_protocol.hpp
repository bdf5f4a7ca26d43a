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

// Optimal entangled preparations and postselections for n copies of a
// single-ancilla observable, and the closed-form maxima they achieve.

#include <vector>

#include "ewva/statevec.hpp"

namespace ewva {

/// A = a_1 + ... + a_n, where copy k of the single observable acts on
/// labels first_label + k*q ... first_label + k*q + q - 1 (q = qubits of a).
class JointObservable {
 public:
  JointObservable(const Operator& single, int n, int first_label = 1);

  const Operator& single() const { return single_; }
  int n() const { return n_; }
  double lambda_min() const { return spectrum_.min(); }
  double lambda_max() const { return spectrum_.max(); }
  const Register& ancilla_register() const { return reg_; }

  /// Copy k of the single observable, relabeled onto its ancilla slot.
  Operator copy(int k) const;
  /// The joint observable on the full ancilla register (built on demand).
  Operator total() const;
  /// |lambda_max>^{(x)n} or |lambda_min>^{(x)n}.
  Ket extreme_product(bool maximum) const;

 private:
  Operator single_;
  int n_;
  Register reg_;
  Spectrum spectrum_;
};

struct Optimum {
  Ket prep;
  Ket post;
  Complex A_w;
  double P_s_exact;   // |<post|prep>|^2
  double P_s_approx;  // Var(A)/|A_w|^2
  double theta;
};

struct MaxProbability {
  double exact;   // Var / (<A^2> - 2<A> Re A_w + |A_w|^2)
  double approx;  // Var / |A_w|^2
};

struct ScalingRow {
  int n;
  double ps_entangled;    // exact max P_s with the max-variance preparation
  double ps_independent;  // n * P_s(n = 1)
  double ratio;           // ps_entangled / ps_independent, tends to n
};

/// (|lambda_max>^n + e^{i theta} |lambda_min>^n) / sqrt(2).
/// Throws DegenerateObservable when lambda_max == lambda_min.
Ket max_variance_prep(const JointObservable& obs, double theta = 0.0);

/// Normalized component of |Psi_i> orthogonal to (A - A_w)|Psi_i>.
/// Throws DegeneratePrep when Var(A) vanishes on the preparation.
Ket optimal_post_fixed_Aw(const Ket& prep, const Operator& A, Complex A_w);

/// sqrt(P_s)|Psi_i> + sqrt(1-P_s) e^{i theta}|Psi_i_perp>, with |Psi_i_perp>
/// along A|Psi_i> - <A>|Psi_i>, phased so <Psi_i_perp|A|Psi_i> > 0.
Ket optimal_post_fixed_Ps(const Ket& prep, const Operator& A, double P_s, double theta = 0.0);

/// |<A> + sqrt((1-P_s)/P_s) e^{-i theta} sqrt(Var A)|, the weak value the
/// fixed-P_s optimum realizes.
Complex fixed_Ps_weak_value(const Ket& prep, const Operator& A, double P_s, double theta = 0.0);

MaxProbability max_Ps_formula(const Ket& prep, const Operator& A, Complex A_w);

/// Preparation, postselection and figures of merit for a fixed weak value.
Optimum fixed_Aw_optimum(const JointObservable& obs, Complex A_w, double theta = 0.0);

std::vector<ScalingRow> quadratic_vs_linear_scaling(const Operator& single, Complex A_w, int n_min,
                                                    int n_max);

}  // namespace ewva

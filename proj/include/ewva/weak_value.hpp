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

// Weak values, postselection probabilities and meter responses for the
// impulsive coupling U(g) = exp(-i g A (x) F) between an ancilla register
// and a meter register.

#include <optional>
#include <vector>

#include "ewva/statevec.hpp"

namespace ewva {

struct AmplificationSetup {
  Ket prep;   // |Psi_i> on the ancilla register
  Ket post;   // |Psi_f> on the same register
  Ket meter;  // |phi>
  Operator A;  // ancilla observable
  Operator F;  // meter coupling observable
  std::optional<Operator> R;  // meter readout; F when absent
  double g = 0.0;

  const Operator& readout() const { return R ? *R : F; }
  /// Throws InvalidArgument / NonHermitian / RegisterMismatch.
  void validate() const;
};

struct MeterMoments {
  Complex alpha;  // <R F>
  double beta;    // <F R F>
  double sigma2;  // <F^2>
};

struct PostselectionProbability {
  double exact;         // |(<Psi_f| x 1) U(g) |Psi_i>|phi>|^2
  double zeroth_order;  // |<Psi_f|Psi_i>|^2
};

struct PostselectedMeter {
  Ket phi_prime;  // normalized
  double prob;
};

/// <post|A|prep> / <post|prep>. Throws OrthogonalPostselection when
/// |<post|prep>| < tol::kOrthogonalPostselection.
Complex weak_value(const Ket& prep, const Ket& post, const Operator& A);

PostselectionProbability postselection_probability(const AmplificationSetup& setup);

/// Probability of at least one success in `attempts` independent tries.
double reference_success_probability(double p_single, int attempts);

/// Spectral form of the Kraus operator M(g) = <Psi_f| U(g) |Psi_i>:
/// M(g) = sum_k c_k exp(-i g lambda_k F), c_k = <Psi_f|v_k><v_k|Psi_i>.
/// Built once per (prep, post, A, F); evaluating M or dM/dg at any g is
/// then a sum over the meter spectrum.
class KrausFamily {
 public:
  KrausFamily(const Ket& prep, const Ket& post, const Operator& A, const Operator& F);
  /// Reuses a spectrum of A already embedded on prep's register.
  KrausFamily(const Spectrum& a_spectrum, const Ket& prep, const Ket& post, const Operator& F);
  explicit KrausFamily(const AmplificationSetup& setup)
      : KrausFamily(setup.prep, setup.post, setup.A, setup.F) {}

  Operator kraus(double g) const;
  Operator kraus_derivative(double g) const;
  /// M(g)|phi>, unnormalized; its squared norm is the postselection probability.
  Ket branch(const Ket& meter, double g) const;
  Ket branch_derivative(const Ket& meter, double g) const;

 private:
  Operator meter_operator(double g, bool derivative) const;

  Register meter_reg_;
  std::vector<double> lambda_;
  std::vector<Complex> weight_;
  Spectrum f_spectrum_;
};

Operator kraus_operator(const AmplificationSetup& setup);

/// exp(-i g A (x) F)|Psi_i>|phi> by full matrix exponential on the joint
/// register (ancilla labels first, then meter).
Ket post_interaction_state(const AmplificationSetup& setup);

/// Throws VanishingBranch when the kept probability is <= 1e-300.
PostselectedMeter postselected_meter(const AmplificationSetup& setup);

MeterMoments meter_moments(const Ket& meter, const Operator& F, const Operator& R);

double response_second_order(double g, Complex A_w, const MeterMoments& moments);
double response_linear(double g, Complex A_w, Complex alpha);
/// <R> in the normalized postselected meter state.
double response_exact(const AmplificationSetup& setup);

}  // namespace ewva

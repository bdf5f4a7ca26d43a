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

// Quantum Fisher information about the coupling g: the derivative-form
// oracle, the generator-variance form, per-outcome information of
// postselected meter states, and the closed forms for the qubit examples.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ewva/statevec.hpp"
#include "ewva/weak_value.hpp"

namespace ewva {

/// g-units and phi-units differ by I(phi) = I(g) / 4, since g = phi / 2.
enum class FisherUnits { per_g, per_phi };

struct FisherValue {
  double value = 0.0;
  FisherUnits units = FisherUnits::per_g;

  double per_g() const { return units == FisherUnits::per_g ? value : 4.0 * value; }
  double per_phi() const { return units == FisherUnits::per_phi ? value : value / 4.0; }
  FisherValue in(FisherUnits u) const { return {u == FisherUnits::per_g ? per_g() : per_phi(), u}; }
};

/// g -> |Phi_g>, possibly unnormalized. `derivative` is optional; when set
/// it must return d|Phi_g>/dg exactly.
struct ParamStateFamily {
  std::function<Ket(double)> evaluate;
  double lo = -1.0;
  double hi = 1.0;
  std::function<Ket(double)> derivative;
};

/// 4 <dPhi|dPhi> - 4 |<dPhi|Phi>|^2.
double qfi_from_derivative(const Ket& state, const Ket& derivative);

/// Central-difference oracle for the QFI at g. Evaluates the derivative at
/// step h and h/2, throws StepTooLarge if the two QFI values differ by more
/// than rel_tol (relative to max(|I|, 1)), and returns the Richardson
/// combination.
double qfi_derivative(const ParamStateFamily& family, double g, double step = 1e-4,
                      double rel_tol = 1e-6);
/// Same quantity from the family's exact derivative.
double qfi_exact(const ParamStateFamily& family, double g);

/// 4 Var(H) for exp(-i g H)|state>.
FisherValue qfi_generator(const Ket& state, const Operator& H);

/// 4 [<A^2><F^2> - (<A><F>)^2] for the product preparation |prep>|meter>.
FisherValue qfi_no_postselection(const Ket& prep, const Ket& meter, const Operator& A,
                                 const Operator& F);

/// The unnormalized postselected family g -> sqrt(P_s(g)) |phi'(g)>.
ParamStateFamily postselected_family(const AmplificationSetup& setup);

struct OutcomeFisher {
  FisherValue exact;
  /// 4 P_s |A_w|^2 [Var F - <F^2>(2 g Im A_w <F> + |g A_w|^2 <F^2>)];
  /// empty when the outcome is orthogonal to the preparation.
  std::optional<FisherValue> approx;
  double P_s;  // |<Psi_f|Psi_i>|^2
  std::optional<Complex> A_w;
};

OutcomeFisher qfi_outcome(const AmplificationSetup& setup);

struct BasisSum {
  std::vector<double> per_outcome;  // g-units, in basis order
  double sum = 0.0;
  double reference = 0.0;  // 4 <A^2> Var(F)
  double residual() const { return reference - sum; }
};

/// Sum of exact per-outcome information over an orthonormal basis of the
/// ancilla register. Throws IncompleteBasis unless the Gram matrix is the
/// identity within tol::kBasisCompleteness.
BasisSum qfi_basis_sum(const Ket& prep, const Ket& meter, const Operator& A, const Operator& F,
                       double g, const std::vector<Ket>& basis);

/// Gram-Schmidt completion of `first` with computational basis vectors.
std::vector<Ket> complete_basis(const Ket& first);

/// Var(A) / <A^2> on the preparation. Throws ZeroSecondMoment.
double efficiency_eta(const Ket& prep, const Operator& A);

enum class AncillaExample { projector, sigma_z };
enum class PostselectionCase { fixed_Aw, fixed_Ps };

struct AnalyticFisher {
  double value = 0.0;  // phi-units
  bool in_regime = true;
  std::vector<std::string> warnings;
};

/// Closed forms for the two qubit examples. For fixed_Aw, `parameter` is
/// |A_w|; for fixed_Ps it is the postselection probability p. Outside the
/// linear-response conditions (n phi <= 0.1, phi |A_w| <= 0.1) the value is
/// still returned, with in_regime = false and a warning.
AnalyticFisher analytic_qubit_fisher(AncillaExample example, PostselectionCase which, int n,
                                     double parameter, double phi);

struct FisherReport {
  double total = 0.0;
  std::vector<std::pair<std::string, double>> per_outcome;
  double eta = 0.0;
  std::optional<double> analytic;
  double cramer_rao = 0.0;  // total^{-1/2}
  FisherUnits units = FisherUnits::per_g;
};

/// Full report for one setup; per-outcome values use the basis completed
/// from setup.post.
FisherReport fisher_report(const AmplificationSetup& setup, FisherUnits units,
                           std::optional<double> analytic = std::nullopt);

}  // namespace ewva

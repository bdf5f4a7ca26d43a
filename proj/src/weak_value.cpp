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

#include "ewva/weak_value.hpp"

#include <cmath>

#include "ewva/errors.hpp"
#include "ewva/tolerances.hpp"

namespace ewva {
namespace {

void require_normalized(const Ket& k, const char* what) {
  if (!k.is_normalized(tol::kAccumulated)) {
    throw InvalidArgument(std::string(what) + " must be normalized");
  }
}

void require_hermitian(const Operator& op, const char* what) {
  if (!op.hermitian()) throw NonHermitian(std::string(what) + " must be Hermitian");
}

bool subset(const Register& small, const Register& big) {
  return register_difference(small, big).empty();
}

}  // namespace

void AmplificationSetup::validate() const {
  require_normalized(prep, "preparation");
  require_normalized(post, "postselection");
  require_normalized(meter, "meter state");
  require_hermitian(A, "A");
  require_hermitian(F, "F");
  require_hermitian(readout(), "R");
  if (prep.reg() != post.reg()) throw RegisterMismatch("prep and post must share a register");
  if (!subset(A.reg(), prep.reg())) throw RegisterMismatch("A must act on the ancilla register");
  if (!subset(F.reg(), meter.reg()) || !subset(readout().reg(), meter.reg())) {
    throw RegisterMismatch("F and R must act on the meter register");
  }
  if (register_difference(prep.reg(), meter.reg()) != prep.reg()) {
    throw RegisterMismatch("ancilla and meter registers overlap");
  }
}

Complex weak_value(const Ket& prep, const Ket& post, const Operator& A) {
  const Complex overlap = inner(post, prep);
  if (std::abs(overlap) < tol::kOrthogonalPostselection) {
    throw OrthogonalPostselection("postselection orthogonal to preparation; weak value undefined");
  }
  return inner(post, apply(A, prep)) / overlap;
}

double reference_success_probability(double p_single, int attempts) {
  if (p_single < 0.0 || p_single > 1.0 || attempts < 0) {
    throw InvalidArgument("reference probability needs p in [0,1] and attempts >= 0");
  }
  // 1 - (1-p)^n without cancellation for small p.
  return -std::expm1(attempts * std::log1p(-p_single));
}

KrausFamily::KrausFamily(const Ket& prep, const Ket& post, const Operator& A, const Operator& F)
    : KrausFamily(A.embed(prep.reg()).spectrum(), prep, post, F) {}

KrausFamily::KrausFamily(const Spectrum& a, const Ket& prep, const Ket& post, const Operator& F)
    : meter_reg_(F.reg()), f_spectrum_(F.spectrum()) {
  lambda_ = a.eigenvalues;
  weight_.reserve(lambda_.size());
  for (const Ket& v : a.eigenkets) weight_.push_back(inner(post, v) * inner(v, prep));
}

Operator KrausFamily::meter_operator(double g, bool derivative) const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << meter_reg_.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t j = 0; j < f_spectrum_.eigenvalues.size(); ++j) {
    const double mu = f_spectrum_.eigenvalues[j];
    Complex coeff{};
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
      const Complex phase = std::exp(Complex(0.0, -g * lambda_[k] * mu));
      coeff += derivative ? weight_[k] * Complex(0.0, -lambda_[k] * mu) * phase : weight_[k] * phase;
    }
    m += coeff * Operator::outer(f_spectrum_.eigenkets[j], f_spectrum_.eigenkets[j]).matrix();
  }
  return Operator(meter_reg_, std::move(m));
}

Operator KrausFamily::kraus(double g) const { return meter_operator(g, false); }
Operator KrausFamily::kraus_derivative(double g) const { return meter_operator(g, true); }

Ket KrausFamily::branch(const Ket& meter, double g) const { return apply(kraus(g), meter); }

Ket KrausFamily::branch_derivative(const Ket& meter, double g) const {
  return apply(kraus_derivative(g), meter);
}

Operator kraus_operator(const AmplificationSetup& setup) {
  setup.validate();
  return KrausFamily(setup).kraus(setup.g);
}

Ket post_interaction_state(const AmplificationSetup& setup) {
  setup.validate();
  const Ket joint = tensor(setup.prep, setup.meter);
  const Operator h = setup.A * setup.F;
  return apply(exp_hermitian(h, setup.g), joint);
}

PostselectionProbability postselection_probability(const AmplificationSetup& setup) {
  setup.validate();
  const double zeroth = std::norm(inner(setup.post, setup.prep));
  // At g = 0 the Kraus operator is <Psi_f|Psi_i> times the identity; skip
  // the spectral sum so the two numbers agree to the last bit.
  if (setup.g == 0.0) return {zeroth, zeroth};
  const Ket branch = KrausFamily(setup).branch(setup.meter, setup.g);
  return {branch.norm_squared(), zeroth};
}

PostselectedMeter postselected_meter(const AmplificationSetup& setup) {
  setup.validate();
  const Ket branch = setup.g == 0.0 ? setup.meter.scaled(inner(setup.post, setup.prep))
                                    : KrausFamily(setup).branch(setup.meter, setup.g);
  const double p = branch.norm_squared();
  if (!(p > tol::kVanishingBranch)) {
    throw VanishingBranch("postselected branch probability underflows");
  }
  return {branch.scaled(1.0 / std::sqrt(p)), p};
}

MeterMoments meter_moments(const Ket& meter, const Operator& F, const Operator& R) {
  require_normalized(meter, "meter state");
  const Ket f_phi = apply(F, meter);
  const Complex alpha = inner(meter, apply(R, f_phi));   // <R F>
  const Complex beta = inner(f_phi, apply(R, f_phi));    // <F R F>
  const double sigma2 = f_phi.norm_squared();            // <F^2>
  return {alpha, beta.real(), sigma2};
}

double response_second_order(double g, Complex A_w, const MeterMoments& m) {
  const double aw2 = std::norm(A_w);
  return (2.0 * g * (m.alpha * A_w).imag() + g * g * m.beta * aw2) / (1.0 + g * g * m.sigma2 * aw2);
}

double response_linear(double g, Complex A_w, Complex alpha) {
  return 2.0 * g * (A_w.real() * alpha.imag() + A_w.imag() * alpha.real());
}

double response_exact(const AmplificationSetup& setup) {
  const PostselectedMeter pm = postselected_meter(setup);
  return expectation_raw(pm.phi_prime, setup.readout()).real();
}

}  // namespace ewva

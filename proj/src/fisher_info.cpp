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

#include "ewva/fisher_info.hpp"

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <memory>

#include "ewva/errors.hpp"
#include "ewva/tolerances.hpp"

namespace ewva {
namespace {

Ket central_difference(const ParamStateFamily& f, double g, double h) {
  return (f.evaluate(g + h) - f.evaluate(g - h)).scaled(1.0 / (2.0 * h));
}

std::string basis_label(std::size_t k) { return "f" + std::to_string(k); }

}  // namespace

double qfi_from_derivative(const Ket& state, const Ket& derivative) {
  return 4.0 * (derivative.norm_squared() - std::norm(inner(derivative, state)));
}

double qfi_derivative(const ParamStateFamily& family, double g, double step, double rel_tol) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (g - step < family.lo || g + step > family.hi) {
    throw InvalidArgument("finite-difference stencil leaves the family's domain");
  }
  const Ket state = family.evaluate(g);
  const Ket d_h = central_difference(family, g, step);
  const Ket d_half = central_difference(family, g, step / 2.0);
  const double i_h = qfi_from_derivative(state, d_h);
  const double i_half = qfi_from_derivative(state, d_half);
  if (std::abs(i_h - i_half) > rel_tol * std::max(std::abs(i_half), 1.0)) {
    throw StepTooLarge("QFI changed by " + std::to_string(std::abs(i_h - i_half)) +
                       " when the step was halved");
  }
  const Ket richardson = (d_half.scaled(4.0) - d_h).scaled(1.0 / 3.0);
  return qfi_from_derivative(state, richardson);
}

double qfi_exact(const ParamStateFamily& family, double g) {
  if (!family.derivative) throw InvalidArgument("family has no exact derivative");
  return qfi_from_derivative(family.evaluate(g), family.derivative(g));
}

FisherValue qfi_generator(const Ket& state, const Operator& H) {
  return {4.0 * variance(state, H), FisherUnits::per_g};
}

FisherValue qfi_no_postselection(const Ket& prep, const Ket& meter, const Operator& A,
                                 const Operator& F) {
  const double a1 = expectation(prep, A);
  const double a2 = apply(A, prep).norm_squared();
  const double f1 = expectation(meter, F);
  const double f2 = apply(F, meter).norm_squared();
  return {4.0 * (a2 * f2 - (a1 * f1) * (a1 * f1)), FisherUnits::per_g};
}

ParamStateFamily postselected_family(const AmplificationSetup& setup) {
  setup.validate();
  auto kraus = std::make_shared<KrausFamily>(setup);
  const Ket meter = setup.meter;
  ParamStateFamily f;
  f.evaluate = [kraus, meter](double g) { return kraus->branch(meter, g); };
  f.derivative = [kraus, meter](double g) { return kraus->branch_derivative(meter, g); };
  f.lo = -std::numeric_limits<double>::infinity();
  f.hi = std::numeric_limits<double>::infinity();
  return f;
}

OutcomeFisher qfi_outcome(const AmplificationSetup& setup) {
  const ParamStateFamily family = postselected_family(setup);
  OutcomeFisher out;
  out.exact = {qfi_exact(family, setup.g), FisherUnits::per_g};
  out.P_s = std::norm(inner(setup.post, setup.prep));
  if (std::sqrt(out.P_s) >= tol::kOrthogonalPostselection) {
    const Complex aw = weak_value(setup.prep, setup.post, setup.A);
    const double f1 = expectation(setup.meter, setup.F);
    const double f2 = apply(setup.F, setup.meter).norm_squared();
    const double g = setup.g;
    const double bracket =
        (f2 - f1 * f1) - f2 * (2.0 * g * aw.imag() * f1 + std::norm(g * aw) * f2);
    out.A_w = aw;
    out.approx = FisherValue{4.0 * out.P_s * std::norm(aw) * bracket, FisherUnits::per_g};
  }
  return out;
}

std::vector<Ket> complete_basis(const Ket& first) {
  std::vector<Ket> basis{first.normalized()};
  for (std::size_t i = 0; i < first.dim() && basis.size() < first.dim(); ++i) {
    Ket v = Ket::basis(first.reg(), i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Ket& e : basis) v = v - e.scaled(inner(e, v));
    }
    if (v.norm() > 1e-8) basis.push_back(v.normalized());
  }
  return basis;
}

BasisSum qfi_basis_sum(const Ket& prep, const Ket& meter, const Operator& A, const Operator& F,
                       double g, const std::vector<Ket>& basis) {
  if (basis.size() != prep.dim()) {
    throw IncompleteBasis("basis has " + std::to_string(basis.size()) + " vectors, need " +
                          std::to_string(prep.dim()));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Complex gram = inner(basis[i], basis[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(gram - expected) > tol::kBasisCompleteness) {
        throw IncompleteBasis("basis is not orthonormal at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
  for (const Ket& b : basis) {
    if (b.reg() != prep.reg()) throw RegisterMismatch("basis must live on the ancilla register");
  }
  if (!F.hermitian()) throw NonHermitian("F must be Hermitian");
  const Spectrum a_spec = A.embed(prep.reg()).spectrum();
  BasisSum out;
  out.per_outcome.resize(basis.size());
  const auto count = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const KrausFamily family(a_spec, prep, basis[static_cast<std::size_t>(k)], F);
    out.per_outcome[static_cast<std::size_t>(k)] =
        qfi_from_derivative(family.branch(meter, g), family.branch_derivative(meter, g));
  }
  for (double v : out.per_outcome) out.sum += v;
  const double a2 = apply(A, prep).norm_squared();
  out.reference = 4.0 * a2 * variance(meter, F);
  return out;
}

double efficiency_eta(const Ket& prep, const Operator& A) {
  const double a2 = apply(A, prep).norm_squared();
  if (!(a2 > tol::kDegenerateVariance)) throw ZeroSecondMoment("<A^2> vanishes on the preparation");
  return std::clamp(variance(prep, A) / a2, 0.0, 1.0);
}

AnalyticFisher analytic_qubit_fisher(AncillaExample example, PostselectionCase which, int n,
                                     double parameter, double phi) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(parameter > 0.0)) throw InvalidArgument("|A_w| or p must be positive");
  const double nn = static_cast<double>(n) * n;
  const double prefactor = example == AncillaExample::sigma_z ? nn : nn / 4.0;
  AnalyticFisher out;
  double aw_abs = 0.0;
  if (which == PostselectionCase::fixed_Aw) {
    aw_abs = parameter;
    const double x = phi * aw_abs / 2.0;
    out.value = prefactor * (1.0 - x * x);
  } else {
    const double p = parameter;
    if (p >= 1.0) throw InvalidArgument("p must lie in (0, 1)");
    // Effective weak value of the fixed-p postselection.
    aw_abs = example == AncillaExample::sigma_z ? n * std::sqrt((1.0 - p) / p)
                                                : 0.5 * n * (1.0 + std::sqrt((1.0 - p) / p));
    const double x = example == AncillaExample::sigma_z ? n * phi / (2.0 * std::sqrt(p))
                                                        : n * phi / (4.0 * std::sqrt(p));
    out.value = prefactor * (1.0 - x * x);
  }
  char buf[160];
  if (n * std::abs(phi) > 0.1) {
    std::snprintf(buf, sizeof buf, "n*phi = %.3g exceeds 0.1; closed form degrades", n * std::abs(phi));
    out.warnings.emplace_back(buf);
    out.in_regime = false;
  }
  if (std::abs(phi) * aw_abs > 0.1) {
    std::snprintf(buf, sizeof buf, "phi*|A_w| = %.3g exceeds 0.1; closed form degrades",
                  std::abs(phi) * aw_abs);
    out.warnings.emplace_back(buf);
    out.in_regime = false;
  }
  return out;
}

FisherReport fisher_report(const AmplificationSetup& setup, FisherUnits units,
                           std::optional<double> analytic) {
  setup.validate();
  FisherReport r;
  r.units = units;
  r.total = qfi_no_postselection(setup.prep, setup.meter, setup.A, setup.F).in(units).value;
  const BasisSum sum = qfi_basis_sum(setup.prep, setup.meter, setup.A, setup.F, setup.g,
                                     complete_basis(setup.post));
  for (std::size_t k = 0; k < sum.per_outcome.size(); ++k) {
    r.per_outcome.emplace_back(basis_label(k),
                               FisherValue{sum.per_outcome[k], FisherUnits::per_g}.in(units).value);
  }
  r.eta = efficiency_eta(setup.prep, setup.A);
  r.analytic = analytic;
  r.cramer_rao = 1.0 / std::sqrt(r.total);
  return r;
}

}  // namespace ewva

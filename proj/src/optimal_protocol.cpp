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

#include "ewva/optimal_protocol.hpp"

#include <cmath>

#include "ewva/errors.hpp"
#include "ewva/tolerances.hpp"

namespace ewva {
namespace {

struct Moments {
  double mean;
  double second;
  double var;
};

Moments moments(const Ket& prep, const Operator& A) {
  if (!A.hermitian()) throw NonHermitian("ancilla observable must be Hermitian");
  if (!prep.is_normalized(tol::kAccumulated)) throw InvalidArgument("preparation must be normalized");
  const Ket a_psi = apply(A, prep);
  const double mean = inner(prep, a_psi).real();
  const double second = a_psi.norm_squared();
  return {mean, second, std::max(0.0, second - mean * mean)};
}

}  // namespace

JointObservable::JointObservable(const Operator& single, int n, int first_label)
    : single_(single), n_(n), spectrum_(single.spectrum()) {
  if (n < 1) throw InvalidArgument("joint observable needs n >= 1");
  const int q = static_cast<int>(single.reg().size());
  for (int k = 0; k < n * q; ++k) reg_.push_back(first_label + k);
}

Operator JointObservable::copy(int k) const {
  const int q = static_cast<int>(single_.reg().size());
  Register labels;
  for (int j = 0; j < q; ++j) labels.push_back(reg_[static_cast<std::size_t>(k * q + j)]);
  return single_.relabeled(std::move(labels));
}

Operator JointObservable::total() const {
  Eigen::MatrixXcd m = copy(0).embed(reg_).matrix();
  for (int k = 1; k < n_; ++k) m += copy(k).embed(reg_).matrix();
  return Operator(reg_, std::move(m));
}

Ket JointObservable::extreme_product(bool maximum) const {
  const Ket& e = maximum ? spectrum_.eigenkets.back() : spectrum_.eigenkets.front();
  const int q = static_cast<int>(single_.reg().size());
  Ket out(Register{}, {Complex{1.0}});
  for (int k = 0; k < n_; ++k) {
    Register labels;
    for (int j = 0; j < q; ++j) labels.push_back(reg_[static_cast<std::size_t>(k * q + j)]);
    out = tensor(out, Ket(labels, std::vector<Complex>(e.amplitudes().begin(), e.amplitudes().end())));
  }
  return out;
}

Ket max_variance_prep(const JointObservable& obs, double theta) {
  if (obs.lambda_max() - obs.lambda_min() < tol::kDegenerateSpectrum) {
    throw DegenerateObservable("lambda_max == lambda_min: no preparation has nonzero variance");
  }
  const Ket hi = obs.extreme_product(true);
  const Ket lo = obs.extreme_product(false);
  return (hi + lo.scaled(std::polar(1.0, theta))).scaled(1.0 / std::sqrt(2.0));
}

Ket optimal_post_fixed_Aw(const Ket& prep, const Operator& A, Complex A_w) {
  const Moments m = moments(prep, A);
  if (m.var < tol::kDegenerateVariance) {
    throw DegeneratePrep("preparation has zero variance; no weak value can be engineered");
  }
  const Ket v = apply(A, prep) - prep.scaled(A_w);
  const Ket post = prep - v.scaled(inner(v, prep) / v.norm_squared());
  return post.normalized();
}

Ket optimal_post_fixed_Ps(const Ket& prep, const Operator& A, double P_s, double theta) {
  if (!(P_s > 0.0 && P_s < 1.0)) throw InvalidArgument("P_s must lie in (0, 1)");
  const Moments m = moments(prep, A);
  if (m.var < tol::kDegenerateVariance) {
    throw DegeneratePrep("preparation has zero variance; no weak value can be engineered");
  }
  const Ket perp = (apply(A, prep) - prep.scaled(m.mean)).scaled(1.0 / std::sqrt(m.var));
  return prep.scaled(std::sqrt(P_s)) + perp.scaled(std::sqrt(1.0 - P_s) * std::polar(1.0, theta));
}

Complex fixed_Ps_weak_value(const Ket& prep, const Operator& A, double P_s, double theta) {
  if (!(P_s > 0.0 && P_s < 1.0)) throw InvalidArgument("P_s must lie in (0, 1)");
  const Moments m = moments(prep, A);
  return m.mean + std::sqrt((1.0 - P_s) / P_s) * std::polar(1.0, -theta) * std::sqrt(m.var);
}

MaxProbability max_Ps_formula(const Ket& prep, const Operator& A, Complex A_w) {
  const Moments m = moments(prep, A);
  if (m.var < tol::kDegenerateVariance) return {0.0, 0.0};
  const double denom = m.second - 2.0 * m.mean * A_w.real() + std::norm(A_w);
  return {m.var / denom, m.var / std::norm(A_w)};
}

Optimum fixed_Aw_optimum(const JointObservable& obs, Complex A_w, double theta) {
  const Operator total = obs.total();
  Ket prep = max_variance_prep(obs, theta);
  Ket post = optimal_post_fixed_Aw(prep, total, A_w);
  const double exact = std::norm(inner(post, prep));
  const double approx = max_Ps_formula(prep, total, A_w).approx;
  return {std::move(prep), std::move(post), A_w, exact, approx, theta};
}

std::vector<ScalingRow> quadratic_vs_linear_scaling(const Operator& single, Complex A_w, int n_min,
                                                    int n_max) {
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("scaling needs 1 <= n_min <= n_max");
  const Spectrum s = single.spectrum();
  const double lam = std::max(std::abs(s.min()), std::abs(s.max()));
  if (!(std::abs(A_w) > n_max * lam)) {
    throw InvalidArgument("|A_w| must exceed n_max * max|lambda| for the scaling law");
  }
  const JointObservable one(single, 1);
  const double p1 = max_Ps_formula(max_variance_prep(one), one.total(), A_w).exact;

  std::vector<ScalingRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
#pragma omp parallel for schedule(dynamic)
  for (int n = n_min; n <= n_max; ++n) {
    const JointObservable obs(single, n);
    const double pn = max_Ps_formula(max_variance_prep(obs), obs.total(), A_w).exact;
    rows[static_cast<std::size_t>(n - n_min)] = {n, pn, n * p1, pn / (n * p1)};
  }
  return rows;
}

}  // namespace ewva

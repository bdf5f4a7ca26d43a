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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ewva/errors.hpp"
#include "ewva/optimal_protocol.hpp"
#include "ewva/random.hpp"
#include "ewva/weak_value.hpp"
#include "oracles.hpp"

using namespace ewva;

namespace {

double moment_var(const Ket& s, const Operator& a) { return variance(s, a); }

}  // namespace

TEST_CASE("joint observable: extremes scale with n and are product states") {
  Rng rng(40);
  const Operator single = random_hermitian({1}, rng);
  for (int n : {1, 2, 4}) {
    const JointObservable obs(single, n);
    const Spectrum s = obs.total().spectrum();
    CHECK(s.min() == doctest::Approx(n * obs.lambda_min()).epsilon(1e-10));
    CHECK(s.max() == doctest::Approx(n * obs.lambda_max()).epsilon(1e-10));
    // |lambda_max>^n from the oracle's own eigensolve
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(single.matrix());
    oracle::Vec want = oracle::Vec::Ones(1);
    for (int k = 0; k < n; ++k) want = oracle::kron(es.eigenvectors().col(1), want);
    CHECK(oracle::fidelity(oracle::vec(obs.extreme_product(true)), want) >= 1.0 - 1e-10);
  }
}

TEST_CASE("max-variance preparation") {
  const JointObservable z1(Operator::pauli_z(1), 1);
  const Ket p1 = max_variance_prep(z1);
  CHECK(oracle::fidelity(oracle::vec(p1), oracle::ghz(1)) == doctest::Approx(1.0));
  CHECK(moment_var(p1, z1.total()) == doctest::Approx(1.0).epsilon(1e-12));

  const JointObservable z3(Operator::pauli_z(1), 3);
  const Ket p3 = max_variance_prep(z3);
  CHECK(oracle::fidelity(oracle::vec(p3), oracle::ghz(3)) == doctest::Approx(1.0).epsilon(1e-14));
  // relative phase is +1, not merely up to a global phase
  CHECK(std::abs(p3[0] - p3[7]) < 1e-15);
  CHECK(moment_var(p3, z3.total()) == doctest::Approx(9.0).epsilon(1e-10));

  const JointObservable pr4(Operator::projector(1, 1), 4);
  const Ket p4 = max_variance_prep(pr4);
  CHECK(oracle::fidelity(oracle::vec(p4), oracle::ghz(4)) == doctest::Approx(1.0).epsilon(1e-14));
  // oracle variance straight from the dense sum of projectors
  const oracle::Mat A = oracle::total(oracle::proj(1), 4);
  const oracle::Vec g4 = oracle::ghz(4);
  const double mean = g4.dot(A * g4).real(), second = (A * g4).squaredNorm();
  CHECK(second - mean * mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(moment_var(p4, pr4.total()) == doctest::Approx(4.0).epsilon(1e-10));

  CHECK_THROWS_AS(max_variance_prep(JointObservable(Operator::identity({1}), 2)), DegenerateObservable);
}

TEST_CASE("fixed-A_w postselection") {
  const int n = 3;
  const JointObservable obs(Operator::pauli_z(1), n);
  const Operator A = obs.total();
  const Ket prep = max_variance_prep(obs);
  const Complex aw{0.0, 100.0};
  const Ket post = optimal_post_fixed_Aw(prep, A, aw);

  CHECK(post.is_normalized(1e-12));
  CHECK(std::abs(inner(post, apply(A, prep) - prep.scaled(aw))) < 1e-10);
  CHECK(std::abs(weak_value(prep, post, A) - aw) < 1e-10 * std::abs(aw));
  CHECK(std::norm(inner(post, prep)) == doctest::Approx(9.0 / 10009.0).epsilon(1e-10));
  const MaxProbability mp = max_Ps_formula(prep, A, aw);
  CHECK(mp.exact == doctest::Approx(9.0 / 10009.0).epsilon(1e-12));
  CHECK(mp.approx == doctest::Approx(9e-4).epsilon(1e-12));

  // closed form: -(n l_min - A_w*) |max>^n + (n l_max - A_w*) |min>^n
  const double lmin = -1.0, lmax = 1.0;
  oracle::Vec want = oracle::Vec::Zero(8);
  want(0) = -(n * lmin - std::conj(aw));  // |0..0> is the +1 product
  want(7) = n * lmax - std::conj(aw);
  CHECK(oracle::fidelity(oracle::vec(post), want) >= 1.0 - 1e-10);

  const Optimum o = fixed_Aw_optimum(JointObservable(Operator::pauli_z(1), 3), {0.0, 1.0 / 0.05});
  CHECK(o.P_s_approx == doctest::Approx(0.0225).epsilon(1e-12));
  CHECK(o.P_s_exact == doctest::Approx(std::norm(inner(o.post, o.prep))).epsilon(1e-12));
  CHECK(std::abs(weak_value(o.prep, o.post, obs.total()) - o.A_w) < 1e-10 * std::abs(o.A_w));

  CHECK_THROWS_AS(optimal_post_fixed_Aw(Ket::basis({1, 2, 3}, 0), A, aw), DegeneratePrep);
}

TEST_CASE("fixed-P_s postselection") {
  const JointObservable z2(Operator::pauli_z(1), 2);
  const Ket g2 = max_variance_prep(z2);
  const Ket post2 = optimal_post_fixed_Ps(g2, z2.total(), 0.01);
  CHECK(std::norm(inner(post2, g2)) == doctest::Approx(0.01).epsilon(1e-12));
  const double a2 = std::abs(weak_value(g2, post2, z2.total()));
  CHECK(a2 == doctest::Approx(2.0 * std::sqrt(99.0)).epsilon(1e-10));
  CHECK(a2 == doctest::Approx(std::sqrt(4.0 / 0.01)).epsilon(0.01));

  const JointObservable z3(Operator::pauli_z(1), 3);
  const Ket g3 = max_variance_prep(z3);
  const double a3 = std::abs(weak_value(g3, optimal_post_fixed_Ps(g3, z3.total(), 0.01), z3.total()));
  CHECK(a3 == doctest::Approx(3.0 * std::sqrt(99.0)).epsilon(1e-10));
  CHECK(a3 == doctest::Approx(29.8496).epsilon(1e-5));

  // P_s -> 1: post -> prep and A_w -> <A>
  const Ket near = optimal_post_fixed_Ps(g3, z3.total(), 1.0 - 1e-12);
  CHECK(fidelity(near, g3) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(weak_value(g3, near, z3.total())) < 1e-4);

  CHECK_THROWS_AS(optimal_post_fixed_Ps(g3, z3.total(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(optimal_post_fixed_Ps(g3, z3.total(), 1.0), InvalidArgument);
  CHECK_THROWS_AS(optimal_post_fixed_Ps(Ket::basis({1, 2, 3}, 5), z3.total(), 0.3), DegeneratePrep);
}

TEST_CASE("fixed-P_s weak value formula matches the construction for any theta") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Ket prep = random_ket({1, 2}, rng);
    const Operator A = random_hermitian({1, 2}, rng);
    const double p = std::uniform_real_distribution<double>(0.01, 0.9)(rng);
    const double th = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
    const Ket post = optimal_post_fixed_Ps(prep, A, p, th);
    CHECK(std::norm(inner(post, prep)) == doctest::Approx(p).epsilon(1e-12));
    const Complex want = fixed_Ps_weak_value(prep, A, p, th);
    CHECK(std::abs(weak_value(prep, post, A) - want) < 1e-10 * std::abs(want));
  }
}

TEST_CASE("closed-form maximum postselection probability") {
  for (int n = 1; n <= 5; ++n) {
    const JointObservable z(Operator::pauli_z(1), n);
    const double aw = 37.0;
    CHECK(max_Ps_formula(max_variance_prep(z), z.total(), {0.0, aw}).exact ==
          doctest::Approx(n * n / (n * n + aw * aw)).epsilon(1e-12));
    const JointObservable pr(Operator::projector(1, 1), n);
    const MaxProbability p = max_Ps_formula(max_variance_prep(pr), pr.total(), {0.0, aw});
    CHECK(p.exact == doctest::Approx(n * n / (2.0 * n * n + 4.0 * aw * aw)).epsilon(1e-12));
    CHECK(p.exact == doctest::Approx(n * n / 4.0 / (aw * aw)).epsilon(0.01));
  }
  const JointObservable z(Operator::pauli_z(1), 2);
  CHECK(max_Ps_formula(Ket::basis({1, 2}, 0), z.total(), {2.0, 0.0}).exact == 0.0);
}

TEST_CASE("entangled vs independent scaling") {
  const auto rows = quadratic_vs_linear_scaling(Operator::pauli_z(1), {0.0, 200.0}, 1, 6);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].ratio == 1.0);
  for (const auto& r : rows) CHECK(r.ratio == doctest::Approx(r.n).epsilon(0.02));
  const auto pr = quadratic_vs_linear_scaling(Operator::projector(1, 1), {0.0, 200.0}, 4, 4);
  CHECK(pr[0].ratio == doctest::Approx(4.0).epsilon(0.03));
  CHECK_THROWS_AS(quadratic_vs_linear_scaling(Operator::pauli_z(1), {0.0, 5.0}, 1, 6), InvalidArgument);
}

// --- properties -----------------------------------------------------------

TEST_CASE("property: no postselection in V-perp beats the closed-form maximum") {
  Rng rng(42);
  const JointObservable obs(Operator::pauli_z(1), 3);
  const Operator A = obs.total();
  const Ket prep = max_variance_prep(obs);
  const Complex aw{0.0, 50.0};
  const Ket v = (apply(A, prep) - prep.scaled(aw)).normalized();
  const double bound = max_Ps_formula(prep, A, aw).exact;
  const std::vector<Ket> avoid{v};
  double worst = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Ket f = random_ket_orthogonal_to(prep.reg(), avoid, rng);
    worst = std::max(worst, std::norm(inner(f, prep)) - bound);
    if (trial < 20) CHECK(std::abs(weak_value(prep, f, A) - aw) < 1e-8 * std::abs(aw));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: no state beats the maximal variance") {
  Rng rng(43);
  for (const bool sigma : {true, false}) {
    const JointObservable obs(sigma ? Operator::pauli_z(1) : random_hermitian({1}, rng), 3);
    const double cap = 9.0 / 4.0 * std::pow(obs.lambda_max() - obs.lambda_min(), 2);
    CHECK(moment_var(max_variance_prep(obs), obs.total()) == doctest::Approx(cap).epsilon(1e-10));
    double worst = -1.0;
    for (int trial = 0; trial < 1000; ++trial) {
      worst = std::max(worst, moment_var(random_ket(obs.ancilla_register(), rng), obs.total()) - cap);
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("property: P_s and |A_w| do not depend on the GHZ phase") {
  const JointObservable obs(Operator::pauli_z(1), 3);
  const Optimum base = fixed_Aw_optimum(obs, {0.0, 40.0});
  for (double th : {0.3, 1.7, 3.1, 5.0}) {
    const Optimum o = fixed_Aw_optimum(obs, {0.0, 40.0}, th);
    CHECK(o.P_s_exact == doctest::Approx(base.P_s_exact).epsilon(1e-12));
    CHECK(std::abs(weak_value(o.prep, o.post, obs.total())) == doctest::Approx(40.0).epsilon(1e-12));
  }
}

TEST_CASE("property: approximate maximum is exactly quadratic in n") {
  const Complex aw{0.0, 77.0};
  const JointObservable one(Operator::pauli_z(1), 1);
  const double p1 = max_Ps_formula(max_variance_prep(one), one.total(), aw).approx;
  for (int n = 2; n <= 7; ++n) {
    const JointObservable obs(Operator::pauli_z(1), n);
    CHECK(max_Ps_formula(max_variance_prep(obs), obs.total(), aw).approx / p1 ==
          doctest::Approx(n * n).epsilon(1e-12));
  }
}

TEST_CASE("property: approximation within 10% once |A_w| >= 10 n max|lambda|") {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const JointObservable obs(random_hermitian({1}, rng), n);
    const double lam = std::max(std::abs(obs.lambda_min()), std::abs(obs.lambda_max()));
    const double mag = 10.0 * n * lam * (1.0 + std::uniform_real_distribution<double>(0.0, 3.0)(rng));
    const double arg = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
    const MaxProbability p = max_Ps_formula(max_variance_prep(obs), obs.total(), std::polar(mag, arg));
    CHECK(p.approx == doctest::Approx(p.exact).epsilon(0.1));
  }
}

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

#include "ewva/circuit.hpp"
#include "ewva/errors.hpp"
#include "ewva/optimal_protocol.hpp"
#include "ewva/random.hpp"
#include "ewva/weak_value.hpp"
#include "oracles.hpp"

using namespace ewva;

namespace {

const double kS = 1.0 / std::numbers::sqrt2;
Ket plus(int q) { return Ket({q}, {kS, kS}); }

// single-ancilla postselection R_z(2 eps)|->, written out by hand.
Ket fig1_post(double eps) { return Ket({1}, {std::polar(kS, -eps), -std::polar(kS, eps)}); }

Ket ghz(int n) {
  Register r;
  for (int k = 1; k <= n; ++k) r.push_back(k);
  return oracle::ket(r, oracle::ghz(n));
}

AmplificationSetup fig1_setup(double eps, double phi) {
  const Operator z0 = Operator::pauli_z(0);
  return {plus(1), fig1_post(eps), plus(0), Operator::pauli_z(1), z0, z0, phi / 2.0};
}

struct RandomQubitSetup {
  AmplificationSetup setup;
  Complex aw;
};

// Ancilla qubit 1 with random prep, post, A; meter qubit 0 on the equator
// with F = R = Z (the unbiased meter of the qubit example).
RandomQubitSetup random_setup(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  while (true) {
    const Ket prep = random_ket({1}, rng), post = random_ket({1}, rng);
    if (std::norm(inner(post, prep)) < 1e-3) continue;
    const Operator A = random_hermitian({1}, rng);
    const Ket meter({0}, {kS, std::polar(kS, u(rng))});
    const Operator z0 = Operator::pauli_z(0);
    return {{prep, post, meter, A, z0, z0, 0.0}, weak_value(prep, post, A)};
  }
}

}  // namespace

TEST_CASE("weak value reduces to the expectation when post = prep") {
  CHECK(std::abs(weak_value(plus(1), plus(1), Operator::pauli_z(1))) < 1e-15);
  Rng rng(1);
  const Ket s = random_ket({1, 2}, rng);
  const Operator a = random_hermitian({1, 2}, rng);
  CHECK(std::abs(weak_value(s, s, a) - expectation(s, a)) < 1e-12);
}

TEST_CASE("single-ancilla weak values") {
  const double eps = 0.1;
  // Ratio of the two matrix elements, evaluated by hand.
  const Ket post = fig1_post(eps);
  const Complex want = (std::conj(post[0]) * kS - std::conj(post[1]) * kS) /
                       (std::conj(post[0]) * kS + std::conj(post[1]) * kS);
  const Complex aw = weak_value(plus(1), post, Operator::pauli_z(1));
  CHECK(std::abs(aw - want) < 1e-13);
  CHECK(std::abs(aw - Complex{0.0, -1.0 / std::tan(eps)}) < 1e-12);
  // The coupling the circuit applies has traceless part -Z.
  const Complex circuit = weak_value(plus(1), post, Operator::pauli_z(1).scaled(-1.0));
  CHECK(circuit.imag() == doctest::Approx(9.96664442325924).epsilon(1e-12));
  CHECK(std::abs(inner(post, plus(1))) == doctest::Approx(std::sin(0.1)).epsilon(1e-13));
}

TEST_CASE("GHZ_3 with the entangled postselection amplifies to about 1/eps") {
  const double eps = 0.05;
  const Ket post = postselection_ket(build_entangled_postselection(3, eps, PostselectionMode::max_ps), {1, 2, 3});
  const JointObservable obs(Operator::pauli_z(1), 3);
  const Complex aw = weak_value(ghz(3), post, obs.total());
  CHECK(std::abs(aw - Complex{0.0, -3.0 / std::tan(3 * eps)}) < 1e-10);
  CHECK(std::abs(aw) == doctest::Approx(1.0 / eps).epsilon(0.05));
}

TEST_CASE("orthogonal postselection is an error, not a huge number") {
  CHECK_THROWS_AS(weak_value(plus(1), Ket({1}, {kS, -kS}), Operator::pauli_z(1)), OrthogonalPostselection);
}

TEST_CASE("postselection probability") {
  AmplificationSetup s = fig1_setup(0.1, 0.0);
  const PostselectionProbability p = postselection_probability(s);
  CHECK(p.exact == p.zeroth_order);
  CHECK(p.exact == doctest::Approx(std::pow(std::sin(0.1), 2)).epsilon(1e-12));
  CHECK(p.exact == doctest::Approx(0.00996673).epsilon(1e-6));

  CHECK(reference_success_probability(0.01, 5) == doctest::Approx(1.0 - std::pow(0.99, 5)).epsilon(1e-14));
  CHECK(reference_success_probability(0.01, 5) == doctest::Approx(0.049010).epsilon(1e-5));
  CHECK(reference_success_probability(1e-12, 3) == doctest::Approx(3e-12).epsilon(1e-9));
}

TEST_CASE("Kraus operator agrees with the full exponential and the Taylor oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Ket prep = random_ket({1, 2}, rng), post = random_ket({1, 2}, rng);
    const Ket meter = random_ket({0}, rng);
    const Operator A = random_hermitian({1, 2}, rng), F = random_hermitian({0}, rng);
    const AmplificationSetup s{prep, post, meter, A, F, std::nullopt, 0.37};

    const Ket via_kraus = apply(kraus_operator(s), meter);
    const Ket via_full = project(post_interaction_state(s), post).residual;
    CHECK((via_kraus - via_full.permuted(via_kraus.reg())).norm() < 1e-12);

    const oracle::Vec want = oracle::postselected_branch(oracle::vec(prep), oracle::vec(post), oracle::vec(meter),
                                                         A.matrix(), F.matrix(), 0.37);
    CHECK((oracle::vec(via_kraus) - want).norm() < 1e-11);
  }
}

TEST_CASE("postselected meter: trivial coupling and closed forms") {
  AmplificationSetup s = fig1_setup(0.1, 0.0);
  const PostselectedMeter m0 = postselected_meter(s);
  CHECK(fidelity(m0.phi_prime, plus(0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m0.prob == doctest::Approx(std::norm(inner(s.post, s.prep))).epsilon(1e-14));

  const int n = 3;
  const double phi = 0.01;
  const Complex aw{0.0, 100.0};
  const double x = n * phi / 2.0;
  for (const bool sigma : {true, false}) {
    CAPTURE(sigma);
    const JointObservable obs(sigma ? Operator::pauli_z(1) : Operator::projector(1, 1), n);
    const Optimum opt = fixed_Aw_optimum(obs, aw);
    const Operator z0 = Operator::pauli_z(0);
    const AmplificationSetup st{opt.prep, opt.post, plus(0), obs.total(), z0, z0, phi / 2.0};
    const PostselectedMeter pm = postselected_meter(st);
    // |phi'> proportional to [a 1 + b Z]|+>
    const Complex a = sigma ? Complex{n * std::cos(x)} : static_cast<double>(n) - aw * (1.0 - std::cos(x));
    const Complex b = -Complex{0.0, 1.0} * aw * std::sin(x);
    const Ket closed({0}, {(a + b) * kS, (a - b) * kS});
    CHECK(fidelity(pm.phi_prime, closed) >= 1.0 - 1e-10);
    CHECK(pm.prob == doctest::Approx(postselection_probability(st).exact).epsilon(1e-12));
  }
}

TEST_CASE("vanishing branch is reported") {
  // post orthogonal to prep and no coupling: M = 0
  AmplificationSetup s{plus(1), Ket({1}, {kS, -kS}), plus(0), Operator::pauli_z(1), Operator::pauli_z(0),
                       std::nullopt, 0.0};
  CHECK_THROWS_AS(postselected_meter(s), VanishingBranch);
}

TEST_CASE("meter moments") {
  const auto m1 = meter_moments(plus(0), Operator::pauli_z(0), Operator::pauli_z(0));
  CHECK(std::abs(m1.alpha - 1.0) < 1e-15);
  CHECK(m1.beta == doctest::Approx(0.0));
  CHECK(m1.sigma2 == doctest::Approx(1.0));
  const auto m2 = meter_moments(Ket::basis({0}, 0), Operator::pauli_z(0), Operator::pauli_z(0));
  CHECK(std::abs(m2.alpha - 1.0) < 1e-15);
  CHECK(m2.beta == doctest::Approx(1.0));
  CHECK(m2.sigma2 == doctest::Approx(1.0));
  const auto m3 = meter_moments(plus(0), Operator::pauli_x(0), Operator::pauli_x(0));
  CHECK(std::abs(m3.alpha - 1.0) < 1e-15);
  CHECK(m3.beta == doctest::Approx(1.0));
  CHECK(m3.sigma2 == doctest::Approx(1.0));
}

TEST_CASE("second-order and linear responses") {
  const MeterMoments q{1.0, 0.0, 1.0};
  CHECK(response_second_order(0.0, {0.0, 10.0}, q) == 0.0);
  CHECK(response_second_order(0.05, {0.0, 10.0}, q) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(response_second_order(0.01, {0.0, 10.0}, q) == doctest::Approx(0.2 / 1.01).epsilon(1e-14));
  CHECK(response_second_order(0.01, {0.0, 10.0}, q) == doctest::Approx(0.19802).epsilon(1e-5));

  CHECK(response_linear(0.3, {4.0, 0.0}, 2.0) == 0.0);
  CHECK(response_linear(0.01, {0.0, 10.0}, 1.0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(response_linear(0.005, {0.0, 1.0 / 0.1}, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("exact response of the single-ancilla setup") {
  CHECK(std::abs(response_exact(fig1_setup(0.1, 0.0))) < 1e-15);

  const double eps = 0.1, g = 0.01;
  const double eq5 = 2.0 * g * (1.0 / eps) / (1.0 + std::pow(g / eps, 2));
  // The circuit's coupling gives the positive response ...
  const double circuit = response_exact(circuit_setup(1, eps, 2.0 * g, PostselectionMode::max_ps));
  CHECK(circuit == doctest::Approx(eq5).epsilon(0.02));
  // ... and a literal Z coupling mirrors it.
  CHECK(response_exact(fig1_setup(eps, 2.0 * g)) == doctest::Approx(-circuit).epsilon(1e-12));
}

TEST_CASE("amplification is bounded: the linear-readout response peaks at g|A_w| = 1") {
  const MeterMoments q{1.0, 0.0, 1.0};
  const double eps = 0.05;
  const Complex aw{0.0, 1.0 / std::tan(eps)};
  double best = 0.0, best_g = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double g = i * 0.005 / std::abs(aw);
    const double r = response_second_order(g, aw, q);
    if (r > best) best = r, best_g = g;
    const double exact = response_exact(circuit_setup(1, eps, 2.0 * g, PostselectionMode::max_ps));
    CHECK(exact <= 1.0 + 1e-12);
  }
  CHECK(best == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(best_g * std::abs(aw) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("property: affine covariance of the weak value") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Ket prep = random_ket({1, 2}, rng), post = random_ket({1, 2}, rng);
    const Operator A = random_hermitian({1, 2}, rng);
    const double c = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const Complex shifted = weak_value(prep, post, A.plus_identity(c));
    CHECK(std::abs(shifted - (weak_value(prep, post, A) + c)) < 1e-10 * (1.0 + std::abs(shifted)));
  }
}

TEST_CASE("property: single-ancilla probability at phi = 0 is sin^2(eps)") {
  for (double eps : {0.01, 0.1, 0.3, 0.7}) {
    CHECK(postselection_probability(fig1_setup(eps, 0.0)).exact ==
          doctest::Approx(std::pow(std::sin(eps), 2)).epsilon(1e-12));
  }
}

TEST_CASE("property: postselected_meter and postselection_probability agree") {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    RandomQubitSetup r = random_setup(rng);
    r.setup.g = 0.2;
    CHECK(postselected_meter(r.setup).prob ==
          doctest::Approx(postselection_probability(r.setup).exact).epsilon(1e-12));
  }
}

TEST_CASE("property: exact response converges to the second-order formula at quadratic or better order") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    RandomQubitSetup r = random_setup(rng);
    const MeterMoments m = meter_moments(r.setup.meter, r.setup.F, r.setup.readout());
    const double g0 = 0.1 / std::abs(r.aw);
    double prev = 0.0;
    for (int h = 0; h < 3; ++h) {
      r.setup.g = g0 / std::ldexp(1.0, h);
      const double err = std::abs(response_exact(r.setup) - response_second_order(r.setup.g, r.aw, m));
      if (h > 0 && prev > 1e-13) CHECK(prev / err >= 4.0);
      prev = err;
    }
  }
}

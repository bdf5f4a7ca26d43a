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

#include "ewva/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ewva/errors.hpp"
#include "ewva/kernels.hpp"
#include "ewva/optimal_protocol.hpp"
#include "ewva/tolerances.hpp"

namespace ewva {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Mat2 ry_matrix(double t) {
  const double c = std::cos(t / 2.0), s = std::sin(t / 2.0);
  return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

Mat2 rz_matrix(double t) {
  return {std::polar(1.0, -t / 2.0), Complex{}, Complex{}, std::polar(1.0, t / 2.0)};
}

constexpr Mat2 kX{Complex{0.0}, Complex{1.0}, Complex{1.0}, Complex{0.0}};

unsigned position(const Register& reg, int label) {
  const auto it = std::find(reg.begin(), reg.end(), label);
  return static_cast<unsigned>(it - reg.begin());
}

std::size_t arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::ControlledRotZ) ? 2 : 1;
}

// Shared driver. Returns the product of kept-outcome probabilities.
double execute(const Circuit& c, std::vector<Complex>& amps, bool renormalize) {
  const Register& reg = c.reg();
  double kept = 1.0;
  double norm2 = kernels::norm2(amps);
  for (const Gate& g : c.gates()) {
    const unsigned a = position(reg, g.qubits[0]);
    switch (g.kind) {
      case GateKind::RotY: kernels::apply_1q(amps, a, ry_matrix(g.angle)); break;
      case GateKind::RotZ: kernels::apply_1q(amps, a, rz_matrix(g.angle)); break;
      case GateKind::CNOT: kernels::apply_controlled_1q(amps, a, position(reg, g.qubits[1]), kX); break;
      case GateKind::ControlledRotZ:
        kernels::apply_controlled_1q(amps, a, position(reg, g.qubits[1]), rz_matrix(g.angle));
        break;
      case GateKind::MeasureKeep: {
        const double k = kernels::project_bit(amps, a, g.outcome);
        const double p = norm2 > 0.0 ? k / norm2 : 0.0;
        kept *= p;
        if (renormalize) {
          if (!(k > tol::kVanishingBranch)) {
            throw VanishingBranch("kept branch vanished at MEASURE_KEEP on qubit " +
                                  std::to_string(g.qubits[0]));
          }
          const double s = 1.0 / std::sqrt(k);
          for (Complex& z : amps) z *= s;
          norm2 = 1.0;
        } else {
          norm2 = k;
        }
        break;
      }
    }
  }
  return kept;
}

void check_n(int n, int min) {
  if (n < min) throw InvalidArgument("n must be >= " + std::to_string(min));
  if (static_cast<std::size_t>(n) + 1 > tol::kMaxQubits) throw InvalidArgument("n exceeds the qubit cap");
}

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < std::numbers::pi / 4.0)) {
    throw InvalidArgument("epsilon must lie in (0, pi/4)");
  }
}

Register ancillas(int n, int first) {
  Register r(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] = first + k;
  return r;
}

// Amplitude of the kept all-zeros outcome, i.e. <Psi_f|x>.
Complex kept_amplitude(const Circuit& post, const Ket& x) { return run_branch(post, x)[0]; }

}  // namespace

Circuit::Circuit(Register reg) : reg_(std::move(reg)) {
  if (reg_.empty()) throw InvalidArgument("circuit register is empty");
  if (reg_.size() > tol::kMaxQubits) throw InvalidArgument("register exceeds the qubit cap");
  const std::set<int> uniq(reg_.begin(), reg_.end());
  if (uniq.size() != reg_.size()) throw InvalidArgument("duplicate qubit label in circuit register");
}

Circuit& Circuit::add(Gate gate) {
  if (gate.qubits.size() != arity(gate.kind)) throw InvalidArgument("wrong number of qubits for gate");
  for (int q : gate.qubits) {
    if (std::find(reg_.begin(), reg_.end(), q) == reg_.end()) {
      throw InvalidArgument("gate qubit " + std::to_string(q) + " not in circuit register");
    }
  }
  if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw InvalidArgument("control and target coincide");
  }
  if (!std::isfinite(gate.angle)) throw InvalidArgument("gate angle must be finite");
  if (gate.outcome != 0 && gate.outcome != 1) throw InvalidArgument("MEASURE_KEEP outcome must be 0 or 1");
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  for (const Gate& g : other.gates()) add(g);
  return *this;
}

RunResult run(const Circuit& circuit, const Ket& initial) {
  if (initial.reg() != circuit.reg()) throw RegisterMismatch("initial state must be on the circuit register");
  std::vector<Complex> amps(initial.amplitudes().begin(), initial.amplitudes().end());
  const double kept = execute(circuit, amps, true);
  return {Ket(circuit.reg(), std::move(amps)), kept};
}

Ket run_branch(const Circuit& circuit, const Ket& initial) {
  if (initial.reg() != circuit.reg()) throw RegisterMismatch("initial state must be on the circuit register");
  std::vector<Complex> amps(initial.amplitudes().begin(), initial.amplitudes().end());
  execute(circuit, amps, false);
  return Ket(circuit.reg(), std::move(amps));
}

std::string to_string(PostselectionMode mode) { return mode == PostselectionMode::max_ps ? "max_ps" : "max_aw"; }

double postselection_offset(int n, double epsilon, PostselectionMode mode) {
  return mode == PostselectionMode::max_ps ? n * epsilon : std::sqrt(static_cast<double>(n)) * epsilon;
}

Circuit build_single_ancilla(double phi, double epsilon) {
  if (!std::isfinite(phi) || !std::isfinite(epsilon)) throw InvalidArgument("angles must be finite");
  Circuit c({0, 1});
  c.add(Gate::ry(0, kHalfPi))
      .add(Gate::ry(1, kHalfPi))
      .add(Gate::crz(1, 0, 2.0 * phi))
      .add(Gate::rz(1, -2.0 * epsilon))  // R_z^dagger(2 eps)
      .add(Gate::ry(1, kHalfPi))         // R_y^dagger(-pi/2)
      .add(Gate::measure_keep(1, 0));
  return c;
}

Circuit build_ghz_prep(int n, int first) {
  check_n(n, 1);
  Circuit c(ancillas(n, first));
  c.add(Gate::ry(first, kHalfPi));
  for (int k = 0; k + 1 < n; ++k) c.add(Gate::cnot(first + k, first + k + 1));
  return c;
}

Circuit build_entangled_postselection(int n, double epsilon, PostselectionMode mode, int first) {
  check_n(n, 1);
  check_epsilon(epsilon);
  Circuit c(ancillas(n, first));
  // Fold the parity forward so the last ancilla carries the GHZ qubit and
  // every other line returns to |0> on the GHZ subspace.
  for (int k = 0; k + 1 < n; ++k) c.add(Gate::cnot(first + k + 1, first + k));
  const int last = first + n - 1;
  c.add(Gate::rz(last, -2.0 * postselection_offset(n, epsilon, mode)));
  c.add(Gate::ry(last, kHalfPi));
  for (int k = 0; k < n; ++k) c.add(Gate::measure_keep(first + k, 0));
  return c;
}

Circuit build_amplification(int n, double epsilon, double phi, PostselectionMode mode) {
  check_n(n, 1);
  if (!std::isfinite(phi)) throw InvalidArgument("phi must be finite");
  Register reg = ancillas(n, 1);
  reg.insert(reg.begin(), 0);
  Circuit c(reg);
  c.add(Gate::ry(0, kHalfPi));
  c.append(build_ghz_prep(n));
  for (int k = 1; k <= n; ++k) c.add(Gate::crz(k, 0, 2.0 * phi));
  c.append(build_entangled_postselection(n, epsilon, mode));
  return c;
}

Circuit qubit_reuse_schedule(int n, double epsilon, double phi, PostselectionMode mode) {
  check_n(n, 2);
  check_epsilon(epsilon);
  if (!std::isfinite(phi)) throw InvalidArgument("phi must be finite");
  constexpr int meter = 0, keep = 1, line = 2;
  Circuit c({meter, keep, line});
  c.add(Gate::ry(meter, kHalfPi)).add(Gate::ry(keep, kHalfPi));
  for (int slot = 0; slot + 1 < n; ++slot) {
    c.add(Gate::cnot(keep, line))
        .add(Gate::crz(line, meter, 2.0 * phi))
        .add(Gate::cnot(keep, line))
        .add(Gate::measure_keep(line, 0));
  }
  c.add(Gate::crz(keep, meter, 2.0 * phi))
      .add(Gate::rz(keep, -2.0 * postselection_offset(n, epsilon, mode)))
      .add(Gate::ry(keep, kHalfPi))
      .add(Gate::measure_keep(keep, 0));
  return c;
}

Operator coupling_observable(int n) {
  check_n(n, 1);
  const Register reg = ancillas(n, 1);
  std::vector<double> d(std::size_t{1} << n);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 2.0 * std::popcount(i);
  return Operator::diagonal(reg, d);
}

Operator traceless_coupling(int n) { return coupling_observable(n).plus_identity(-static_cast<double>(n)); }

Ket postselection_ket(const Circuit& post, const Register& reg) {
  if (post.reg() != reg) throw RegisterMismatch("postselection circuit register mismatch");
  std::vector<Complex> amps(std::size_t{1} << reg.size());
  for (std::size_t x = 0; x < amps.size(); ++x) {
    amps[x] = std::conj(kept_amplitude(post, Ket::basis(reg, x)));
  }
  return Ket(reg, std::move(amps));
}

CircuitWeakValue circuit_weak_value(int n, double epsilon, PostselectionMode mode) {
  const Circuit prep = build_ghz_prep(n);
  const Circuit post = build_entangled_postselection(n, epsilon, mode);
  const Ket psi = run(prep, Ket::basis(prep.reg(), 0)).final;
  const Complex den = kept_amplitude(post, psi);
  if (std::norm(den) < tol::kOrthogonalPostselection) {
    throw OrthogonalPostselection("circuit postselection is orthogonal to the preparation");
  }
  const Complex native = kept_amplitude(post, apply(coupling_observable(n), psi)) / den;
  const Complex traceless = kept_amplitude(post, apply(traceless_coupling(n), psi)) / den;
  return {traceless, native, std::norm(den)};
}

AmplificationSetup circuit_setup(int n, double epsilon, double phi, PostselectionMode mode) {
  check_n(n, 1);
  check_epsilon(epsilon);
  const JointObservable obs(Operator::pauli_z(1), n);
  const Operator total = obs.total();
  const Ket prep = max_variance_prep(obs);
  const double delta = postselection_offset(n, epsilon, mode);
  // Both modes land on the fixed-P_s family with theta = pi/2; max_ps also
  // sits at the fixed-A_w optimum for A_w = -i n cot(n eps).
  const Ket post = mode == PostselectionMode::max_ps
                       ? optimal_post_fixed_Aw(prep, total, Complex{0.0, -n / std::tan(delta)})
                       : optimal_post_fixed_Ps(prep, total, std::pow(std::sin(delta), 2), kHalfPi);
  const Ket meter(Register{0}, {Complex{1.0 / std::numbers::sqrt2}, Complex{1.0 / std::numbers::sqrt2}});
  const Operator Z = Operator::pauli_z(0);
  return AmplificationSetup{prep, post, meter, coupling_observable(n), Z, Z, phi / 2.0};
}

MeterOutcome run_meter(const Circuit& circuit) {
  const Register& reg = circuit.reg();
  if (std::find(reg.begin(), reg.end(), 0) == reg.end()) throw InvalidArgument("circuit has no meter qubit 0");
  std::vector<int> outcome_of(reg.size(), -1);
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::MeasureKeep) outcome_of[position(reg, g.qubits[0])] = g.outcome;
  }
  Register others;
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < reg.size(); ++k) {
    if (reg[k] == 0) continue;
    if (outcome_of[k] < 0) throw InvalidArgument("qubit " + std::to_string(reg[k]) + " is never measured");
    index |= static_cast<std::uint64_t>(outcome_of[k]) << others.size();
    others.push_back(reg[k]);
  }
  const RunResult r = run(circuit, Ket::basis(reg, 0));
  const Projection p = project(r.final, Ket::basis(others, index));
  return {p.residual.normalized(), r.kept_prob};
}

EquivalenceCheck check_equivalence(int n, double epsilon, double phi, PostselectionMode mode) {
  EquivalenceCheck out{n, mode, epsilon, phi, 0.0, 0.0, 0.0, std::nullopt, std::nullopt};
  const MeterOutcome full = run_meter(build_amplification(n, epsilon, phi, mode));
  const PostselectedMeter analytic = postselected_meter(circuit_setup(n, epsilon, phi, mode));
  out.kept_prob = full.kept_prob;
  out.fidelity_analytic = fidelity(full.meter, analytic.phi_prime);
  out.prob_delta_analytic = std::abs(full.kept_prob - analytic.prob);
  if (n >= 2) {
    const MeterOutcome sched = run_meter(qubit_reuse_schedule(n, epsilon, phi, mode));
    out.fidelity_scheduler = fidelity(sched.meter, full.meter);
    out.prob_delta_scheduler = std::abs(sched.kept_prob - full.kept_prob);
  }
  return out;
}

}  // namespace ewva

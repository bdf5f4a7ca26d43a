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

// Gate-level circuits for single-ancilla and entangled-ancilla weak value
// amplification, a three-qubit sequential schedule that simulates n
// entangled ancillas, and the bridge to the analytic modules.
//
// Label layout used by every builder: the meter is qubit 0 and the n
// ancillas are qubits 1..n. Rotations follow R_z(t) = exp(-i t Z / 2) and
// R_y(t) = exp(-i t Y / 2). ControlledRotZ(c, t, a) applies R_z(a) to t when
// c is |1>, which equals exp(-i (a/4) (2|1><1|)_c (x) Z_t).

#include <optional>
#include <string>
#include <vector>

#include "ewva/statevec.hpp"
#include "ewva/weak_value.hpp"

namespace ewva {

enum class GateKind { RotY, RotZ, CNOT, ControlledRotZ, MeasureKeep };

struct Gate {
  GateKind kind;
  std::vector<int> qubits;  // single-qubit: {q}; two-qubit: {control, target}
  double angle = 0.0;
  int outcome = 0;  // MeasureKeep only

  static Gate ry(int q, double angle) { return {GateKind::RotY, {q}, angle, 0}; }
  static Gate rz(int q, double angle) { return {GateKind::RotZ, {q}, angle, 0}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0, 0}; }
  static Gate crz(int control, int target, double angle) {
    return {GateKind::ControlledRotZ, {control, target}, angle, 0};
  }
  static Gate measure_keep(int q, int outcome = 0) { return {GateKind::MeasureKeep, {q}, 0.0, outcome}; }

  bool operator==(const Gate&) const = default;
};

class Circuit {
 public:
  explicit Circuit(Register reg);

  /// Validates qubits against the register, finite angles, outcome in {0,1}.
  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);

  const Register& reg() const { return reg_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool operator==(const Circuit&) const = default;

 private:
  Register reg_;
  std::vector<Gate> gates_;
};

struct RunResult {
  Ket final;         // normalized surviving branch
  double kept_prob;  // product of the kept-outcome probabilities
};

/// Applies the gates in order; each MeasureKeep projects, multiplies the
/// kept probability and renormalizes. Throws VanishingBranch.
RunResult run(const Circuit& circuit, const Ket& initial);
/// The surviving branch without renormalization (squared norm = kept prob
/// times the initial squared norm). Never throws on a vanished branch.
Ket run_branch(const Circuit& circuit, const Ket& initial);

enum class PostselectionMode { max_ps, max_aw };

std::string to_string(PostselectionMode mode);

/// Single-ancilla circuit on {meter 0, ancilla 1}.
Circuit build_single_ancilla(double phi, double epsilon);
/// GHZ preparation on qubits first..first+n-1: R_y(pi/2) then a CNOT chain.
Circuit build_ghz_prep(int n, int first = 1);
/// CNOT cascade folding the GHZ parity onto the last ancilla, R_z^dagger of
/// 2 n eps (max_ps) or 2 sqrt(n) eps (max_aw), R_y^dagger(-pi/2), keep 0.
Circuit build_entangled_postselection(int n, double epsilon, PostselectionMode mode, int first = 1);
/// Meter |+>, GHZ preparation, n controlled R_z(2 phi) couplings, and the
/// entangled postselection, on {0, 1..n}. n = 1 gives the single-ancilla circuit.
Circuit build_amplification(int n, double epsilon, double phi, PostselectionMode mode);
/// Same protocol on three physical qubits {meter 0, persistent 1, reuse 2}.
/// Requires n >= 2.
Circuit qubit_reuse_schedule(int n, double epsilon, double phi, PostselectionMode mode);

/// Half-angle of the postselection rotation: n eps or sqrt(n) eps.
double postselection_offset(int n, double epsilon, PostselectionMode mode);

/// Coupling generator of the controlled rotations with g = phi/2:
/// sum_k 2|1><1|_k on ancillas 1..n.
Operator coupling_observable(int n);
/// Its traceless part, -(Z_1 + ... + Z_n).
Operator traceless_coupling(int n);

/// |Psi_f> of a postselection circuit: the ket whose bra the circuit's
/// kept-all-zeros branch implements on `reg`.
Ket postselection_ket(const Circuit& post, const Register& reg);

struct CircuitWeakValue {
  Complex traceless;  // weak value of -(Z_1 + ... + Z_n); +i cot(eps) for n = 1
  Complex native;     // weak value of sum_k 2|1><1|_k = n + traceless
  double overlap_probability;  // |<Psi_f|Psi_i>|^2
};

/// Weak value realized by the GHZ preparation and postselection circuits,
/// evaluated from circuit amplitudes.
CircuitWeakValue circuit_weak_value(int n, double epsilon, PostselectionMode mode);

/// Analytic counterpart of build_amplification built from the optimal
/// protocol operations (meter |+>, F = R = Z, g = phi/2).
AmplificationSetup circuit_setup(int n, double epsilon, double phi, PostselectionMode mode);

struct MeterOutcome {
  Ket meter;  // normalized meter state on {0}
  double kept_prob;
};

/// Runs a circuit from |0...0> and returns the meter state and kept
/// probability (all non-meter qubits must end measured).
MeterOutcome run_meter(const Circuit& circuit);

struct EquivalenceCheck {
  int n;
  PostselectionMode mode;
  double epsilon;
  double phi;
  double kept_prob;
  double fidelity_analytic;
  double prob_delta_analytic;
  std::optional<double> fidelity_scheduler;  // absent for n = 1
  std::optional<double> prob_delta_scheduler;
};

EquivalenceCheck check_equivalence(int n, double epsilon, double phi, PostselectionMode mode);

// Line-oriented text form, one gate per line. See docs/circuit_format.md.
std::string to_text(const Circuit& circuit);
Circuit parse_circuit(const std::string& text);

}  // namespace ewva

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

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include "ewva/circuit.hpp"
#include "ewva/errors.hpp"
#include "ewva/random.hpp"

using namespace ewva;

namespace {

void check_bits(const Circuit& a, const Circuit& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.reg() == b.reg());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Gate& x = a.gates()[i];
    const Gate& y = b.gates()[i];
    CHECK(x.kind == y.kind);
    CHECK(x.qubits == y.qubits);
    CHECK(x.outcome == y.outcome);
    CHECK(std::bit_cast<std::uint64_t>(x.angle) == std::bit_cast<std::uint64_t>(y.angle));
  }
}

void round_trip(const Circuit& c) {
  const std::string text = to_text(c);
  const Circuit back = parse_circuit(text);
  CHECK(back == c);
  check_bits(back, c);
  CHECK(to_text(back) == text);
}

}  // namespace

TEST_CASE("text form of a small circuit") {
  Circuit c({0, 1});
  c.add(Gate::ry(1, 0.5)).add(Gate::cnot(1, 0)).add(Gate::crz(1, 0, -0.25)).add(Gate::rz(0, 3)).add(
      Gate::measure_keep(1, 0));
  CHECK(to_text(c) ==
        "QUBITS 0,1\n"
        "RY 1 0.5\n"
        "CNOT 1,0\n"
        "CRZ 1,0 -0.25\n"
        "RZ 0 3\n"
        "MEASURE_KEEP 1 0\n");
  CHECK(to_text(Circuit({4})) == "QUBITS 4\n");
}

TEST_CASE("every builder round-trips bit-exactly") {
  using M = PostselectionMode;
  round_trip(build_single_ancilla(1e-3, 0.1));
  round_trip(build_ghz_prep(6));
  round_trip(build_ghz_prep(3, 7));
  for (M m : {M::max_ps, M::max_aw}) {
    round_trip(build_entangled_postselection(5, 0.05, m));
    round_trip(build_amplification(7, 0.02, 1.0 / 3.0, m));
    round_trip(qubit_reuse_schedule(6, 0.07, 0.005, m));
  }
}

TEST_CASE("awkward angles survive the round trip") {
  const double angles[] = {-0.0,
                           std::numbers::pi,
                           -std::numbers::pi / 2,
                           1.0 / 3.0,
                           0.1 + 0.2,
                           1e-300,
                           std::numeric_limits<double>::denorm_min(),
                           std::numeric_limits<double>::max(),
                           -std::numeric_limits<double>::min()};
  Circuit c({0, 1});
  for (double a : angles) c.add(Gate::rz(0, a)).add(Gate::crz(0, 1, a)).add(Gate::ry(1, a));
  round_trip(c);
  CHECK(to_text(parse_circuit("QUBITS 0\nRZ 0 -0\n")) == "QUBITS 0\nRZ 0 -0\n");
}

TEST_CASE("property: random circuits round-trip") {
  Rng rng(71);
  std::uniform_int_distribution<int> len_d(0, 30), pick(0, 3), kind_d(0, 4), bit(0, 1);
  std::uniform_real_distribution<double> mag(-12.0, 4.0);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    Circuit c({0, 1, 2, 5});
    const int len = len_d(rng);
    for (int k = 0; k < len; ++k) {
      const int i = pick(rng);
      const int q = c.reg()[static_cast<std::size_t>(i)];
      const int t = c.reg()[static_cast<std::size_t>((i + 1 + pick(rng) % 3) % 4)];
      const double a = gauss(rng) * std::pow(10.0, mag(rng));
      switch (kind_d(rng)) {
        case 0: c.add(Gate::ry(q, a)); break;
        case 1: c.add(Gate::rz(q, a)); break;
        case 2: c.add(Gate::cnot(q, t)); break;
        case 3: c.add(Gate::crz(q, t, a)); break;
        default: c.add(Gate::measure_keep(q, bit(rng))); break;
      }
    }
    round_trip(c);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const Circuit c = parse_circuit(
      "# leading comment\n"
      "\n"
      "QUBITS 0,1   # register\n"
      "  RY   1   0.5\n"
      "\t\n"
      "CNOT 1,0 # entangle\n");
  Circuit want({0, 1});
  want.add(Gate::ry(1, 0.5)).add(Gate::cnot(1, 0));
  CHECK(c == want);
}

TEST_CASE("malformed text") {
  auto bad = [](const std::string& text, const std::string& needle) {
    try {
      parse_circuit(text);
      FAIL("accepted: " << text);
    } catch (const ParseError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  bad("", "missing QUBITS");
  bad("# only a comment\n", "missing QUBITS");
  bad("RY 0 0.1\n", "line 1");
  bad("QUBITS 0\nQUBITS 1\n", "line 2");
  bad("QUBITS 0,0\n", "line 1");
  bad("QUBITS\n", "line 1");
  bad("QUBITS 0\nRX 0 0.1\n", "unknown gate");
  bad("QUBITS 0\nRY 0\n", "wrong number");
  bad("QUBITS 0,1\nCNOT 0,1 0.5\n", "wrong number");
  bad("QUBITS 0\nRY 0 abc\n", "bad angle");
  bad("QUBITS 0\nRY 0 0.1x\n", "bad angle");
  bad("QUBITS 0\nRY 0 inf\n", "line 2");
  bad("QUBITS 0\nRY 0 nan\n", "line 2");
  bad("QUBITS 0\nRY 1 0.1\n", "line 2");
  bad("QUBITS 0,1\nCNOT 0,0\n", "line 2");
  bad("QUBITS 0,1\nCNOT 0\n", "line 2");
  bad("QUBITS 0\nMEASURE_KEEP 0 2\n", "line 2");
  bad("QUBITS 0\nMEASURE_KEEP 0 0.5\n", "bad integer");
  bad("QUBITS 0\n\n\nRY x 0.1\n", "line 4");
}

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

#include <charconv>
#include <sstream>
#include <string_view>

#include "ewva/circuit.hpp"
#include "ewva/errors.hpp"

namespace ewva {

namespace {

struct Spelling {
  GateKind kind;
  std::string_view name;
};

constexpr Spelling kNames[] = {
    {GateKind::RotY, "RY"},           {GateKind::RotZ, "RZ"},
    {GateKind::CNOT, "CNOT"},         {GateKind::ControlledRotZ, "CRZ"},
    {GateKind::MeasureKeep, "MEASURE_KEEP"},
};

std::string_view name_of(GateKind k) {
  for (const auto& s : kNames)
    if (s.kind == k) return s.name;
  return "?";
}

std::string shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string qubit_list(const std::vector<int>& qs) {
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(qs[i]);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view tok, int line) {
  int v = 0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) fail(line, "bad integer '" + std::string(tok) + "'");
  return v;
}

double parse_real(std::string_view tok, int line) {
  double v = 0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) fail(line, "bad angle '" + std::string(tok) + "'");
  return v;
}

std::vector<int> parse_list(std::string_view tok, int line) {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = tok.find(',', start);
    out.push_back(parse_int(tok.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string to_text(const Circuit& circuit) {
  std::string out = "QUBITS " + qubit_list(circuit.reg()) + "\n";
  for (const Gate& g : circuit.gates()) {
    out += name_of(g.kind);
    out += ' ';
    out += qubit_list(g.qubits);
    switch (g.kind) {
      case GateKind::RotY:
      case GateKind::RotZ:
      case GateKind::ControlledRotZ: out += ' ' + shortest(g.angle); break;
      case GateKind::MeasureKeep: out += ' ' + std::to_string(g.outcome); break;
      case GateKind::CNOT: break;
    }
    out += '\n';
  }
  return out;
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::optional<Circuit> c;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "QUBITS") {
      if (c) fail(line, "duplicate QUBITS line");
      if (tok.size() != 2) fail(line, "QUBITS takes one comma-separated list");
      try {
        c.emplace(parse_list(tok[1], line));
      } catch (const InvalidArgument& e) {
        fail(line, e.what());
      }
      continue;
    }
    if (!c) fail(line, "QUBITS line must come first");

    const Spelling* sp = nullptr;
    for (const auto& s : kNames)
      if (s.name == tok[0]) sp = &s;
    if (!sp) fail(line, "unknown gate '" + tok[0] + "'");

    Gate g{sp->kind, {}, 0.0, 0};
    const bool has_arg = sp->kind != GateKind::CNOT;
    if (tok.size() != (has_arg ? 3u : 2u)) fail(line, "wrong number of fields for " + tok[0]);
    g.qubits = parse_list(tok[1], line);
    if (sp->kind == GateKind::MeasureKeep) {
      g.outcome = parse_int(tok[2], line);
    } else if (has_arg) {
      g.angle = parse_real(tok[2], line);
    }
    try {
      c->add(std::move(g));
    } catch (const InvalidArgument& e) {
      fail(line, e.what());
    }
  }
  if (!c) throw ParseError("missing QUBITS line");
  return *c;
}

}  // namespace ewva

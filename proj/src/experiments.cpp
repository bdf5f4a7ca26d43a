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

#include "ewva/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <limits>
#include <optional>
#include <type_traits>

#include <json.hpp>

#include "ewva/circuit.hpp"
#include "ewva/errors.hpp"
#include "ewva/fisher_info.hpp"
#include "ewva/optimal_protocol.hpp"
#include "ewva/random.hpp"
#include "ewva/tolerances.hpp"
#include "ewva/weak_value.hpp"

#ifndef EWVA_VERSION
#define EWVA_VERSION "0.0.0"
#endif

namespace ewva {

namespace {

Operator single_observable(Observable o) {
  return o == Observable::sigma_z ? Operator::pauli_z(1) : Operator::projector(1, 1);
}

ScanReport start(const ScanConfig& config, std::vector<std::string> columns) {
  config.validate();
  ScanReport r;
  r.config = config;
  r.columns = std::move(columns);
  r.version = tool_version();
  r.timestamp = report_timestamp();
  r.rng = kRngName;
  return r;
}

// Linear-response limit for n phi and phi |A_w|; the slack absorbs the
// rounding in products like 1e-3 * 100.
constexpr double kLinearLimit = 0.1 * (1.0 + 1e-12);

std::size_t count(const ScanConfig& c) { return static_cast<std::size_t>(c.n_max - c.n_min + 1); }

// A row is a `pass` failure only when its regime flag is set.
void tally(ScanReport& r) {
  const auto it_regime = std::find(r.columns.begin(), r.columns.end(), "regime_ok");
  const auto it_pass = std::find(r.columns.begin(), r.columns.end(), "pass");
  const auto ir = static_cast<std::size_t>(it_regime - r.columns.begin());
  const auto ip = static_cast<std::size_t>(it_pass - r.columns.begin());
  r.all_pass = true;
  for (const auto& row : r.rows) {
    if (std::get<bool>(row[ir]) && !std::get<bool>(row[ip])) r.all_pass = false;
  }
}

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return real(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      c);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "null";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? real(v) : "null";
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return json_string(v);
      },
      c);
}

// Config echo in a fixed order; out_path is left out so the destination
// does not change the bytes.
std::vector<std::pair<std::string, Cell>> metadata(const ScanReport& r) {
  const ScanConfig& c = r.config;
  return {
      {"tool", std::string("ewva")},
      {"version", r.version},
      {"timestamp", r.timestamp},
      {"rng", r.rng},
      {"seed", static_cast<std::int64_t>(c.seed)},
      {"experiment", to_string(c.experiment)},
      {"n_min", std::int64_t{c.n_min}},
      {"n_max", std::int64_t{c.n_max}},
      {"epsilon", c.epsilon},
      {"phi", c.phi},
      {"aw", c.aw},
      {"observable", to_string(c.observable)},
      {"all_pass", r.all_pass},
  };
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::ps_scaling: return "ps_scaling";
    case Experiment::aw_scaling: return "aw_scaling";
    case Experiment::fisher_saturation: return "fisher_saturation";
    case Experiment::circuit_check: return "circuit_check";
  }
  return "?";
}

std::string to_string(Observable o) { return o == Observable::sigma_z ? "sigma_z" : "projector"; }
std::string to_string(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "json"; }

Observable parse_observable(const std::string& s) {
  if (s == "sigma_z") return Observable::sigma_z;
  if (s == "projector") return Observable::projector;
  throw ConfigError("observable must be sigma_z or projector, got '" + s + "'");
}

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

void ScanConfig::validate() const {
  // n ancillas plus the meter must fit the register cap.
  if (n_min < 1 || n_max < n_min || static_cast<std::size_t>(n_max) + 1 > tol::kMaxQubits) {
    throw ConfigError("need 1 <= n-min <= n-max <= " + std::to_string(tol::kMaxQubits - 1));
  }
  if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 4.0)) throw ConfigError("epsilon must lie in (0, pi/4)");
  if (!(std::isfinite(phi) && phi >= 0.0)) throw ConfigError("phi must be a finite non-negative angle");
  if (!(std::isfinite(aw) && aw > 0.0)) throw ConfigError("aw must be a finite positive magnitude");
}

std::vector<Cell> ScanReport::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("no column '" + name + "'");
  const auto i = static_cast<std::size_t>(it - columns.begin());
  std::vector<Cell> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[i]);
  return out;
}

double relative_error(double measured, double analytic) {
  if (analytic == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(measured - analytic) / std::abs(analytic);
}

ScanReport run_ps_scaling(const ScanConfig& config) {
  ScanReport r = start(config, {"n", "aw_abs", "ps_exact", "ps_approx", "ps_reference", "ratio",
                                "analytic", "relative_error", "regime_ok", "pass"});
  if (config.aw < 10.0 * config.n_max) throw ConfigError("scan-ps needs aw >= 10 * n-max");
  const Operator single = single_observable(config.observable);
  const Complex aw{0.0, config.aw};
  const auto scaling = quadratic_vs_linear_scaling(single, aw, config.n_min, config.n_max);
  const bool regime = config.aw >= 20.0 * config.n_max;
  r.rows.resize(count(config));
#pragma omp parallel for schedule(dynamic)
  for (int n = config.n_min; n <= config.n_max; ++n) {
    const ScalingRow& s = scaling[static_cast<std::size_t>(n - config.n_min)];
    const JointObservable obs(single, n);
    const double approx = max_Ps_formula(max_variance_prep(obs), obs.total(), aw).approx;
    const double err = relative_error(s.ratio, n);
    r.rows[static_cast<std::size_t>(n - config.n_min)] = {
        std::int64_t{n}, config.aw, s.ps_entangled, approx, s.ps_independent, s.ratio,
        static_cast<double>(n), err, regime, err <= 0.03};
  }
  tally(r);
  return r;
}

ScanReport run_aw_scaling(const ScanConfig& config) {
  ScanReport r = start(config, {"n", "epsilon", "ps_target", "ps_exact", "aw_abs", "analytic",
                                "relative_error", "regime_ok", "pass"});
  r.rows.resize(count(config));
  for (int n = config.n_min; n <= config.n_max; ++n) {
    const CircuitWeakValue w = circuit_weak_value(n, config.epsilon, PostselectionMode::max_aw);
    const double rn = std::sqrt(static_cast<double>(n));
    const double analytic = rn / config.epsilon;
    const double err = relative_error(std::abs(w.traceless), analytic);
    r.rows[static_cast<std::size_t>(n - config.n_min)] = {
        std::int64_t{n}, config.epsilon, n * config.epsilon * config.epsilon, w.overlap_probability,
        std::abs(w.traceless), analytic, err, rn * config.epsilon <= 0.3, err <= 0.03};
  }
  tally(r);
  return r;
}

ScanReport run_fisher_saturation(const ScanConfig& config) {
  ScanReport r = start(config, {"n", "aw_abs", "phi", "ps_exact", "i_total", "i_postselected",
                                "i_approx", "analytic", "relative_error", "eta", "saturation",
                                "deficit", "i_basis_sum", "basis_residual", "cramer_rao",
                                "regime_ok", "pass"});
  if (config.phi * config.aw > kLinearLimit) {
    throw RegimeError("fisher needs phi * |A_w| <= 0.1 (got " + real(config.phi * config.aw) + ")");
  }
  const Operator single = single_observable(config.observable);
  const AncillaExample example =
      config.observable == Observable::sigma_z ? AncillaExample::sigma_z : AncillaExample::projector;
  const Complex aw{0.0, config.aw};
  const double g = config.phi / 2.0;
  const Ket meter(Register{0}, {Complex{1.0 / std::numbers::sqrt2}, Complex{1.0 / std::numbers::sqrt2}});
  const Operator F = Operator::pauli_z(0);
  r.rows.resize(count(config));
  // Rows are independent and each draws from its own seeded engine.
  for (int n = config.n_min; n <= config.n_max; ++n) {
    const JointObservable obs(single, n);
    const Optimum opt = fixed_Aw_optimum(obs, aw);
    const AmplificationSetup setup{opt.prep, opt.post, meter, obs.total(), F, F, g};
    const double total = qfi_no_postselection(setup.prep, meter, setup.A, F).per_phi();
    const OutcomeFisher one = qfi_outcome(setup);
    const double i1 = one.exact.per_phi();
    const double eta = efficiency_eta(setup.prep, setup.A);
    const AnalyticFisher an = analytic_qubit_fisher(example, PostselectionCase::fixed_Aw, n, config.aw, config.phi);
    Rng rng(config.seed + static_cast<std::uint64_t>(n));
    const BasisSum sum = qfi_basis_sum(setup.prep, meter, setup.A, F, g, random_completion(setup.post, rng));
    const double saturation = i1 / (eta * total);
    const double fvar = variance(meter, F);
    const bool regime = n * config.phi <= kLinearLimit && config.phi * config.aw <= kLinearLimit;
    r.rows[static_cast<std::size_t>(n - config.n_min)] = {
        std::int64_t{n},
        config.aw,
        config.phi,
        one.P_s,
        total,
        i1,
        one.approx ? Cell{one.approx->per_phi()} : Cell{},
        an.value,
        relative_error(i1, an.value),
        eta,
        saturation,
        std::norm(g * aw) * fvar,
        FisherValue{sum.sum, FisherUnits::per_g}.per_phi(),
        relative_error(sum.sum, sum.reference),
        1.0 / std::sqrt(total),
        regime,
        saturation >= 0.99};
  }
  tally(r);
  return r;
}

ScanReport run_circuit_check(const ScanConfig& config) {
  ScanReport r = start(config, {"n", "grid_points", "min_fidelity_analytic", "max_prob_delta_analytic",
                                "min_fidelity_scheduler", "max_prob_delta_scheduler", "regime_ok", "pass"});
  std::vector<double> eps{0.02, 0.05, 0.1};
  if (std::find(eps.begin(), eps.end(), config.epsilon) == eps.end()) eps.push_back(config.epsilon);
  std::vector<double> phis{0.0, 0.005};
  if (std::find(phis.begin(), phis.end(), config.phi) == phis.end()) phis.push_back(config.phi);
  const PostselectionMode modes[] = {PostselectionMode::max_ps, PostselectionMode::max_aw};

  struct Point {
    int n;
    PostselectionMode mode;
    double eps, phi;
  };
  std::vector<Point> grid;
  for (int n = config.n_min; n <= config.n_max; ++n)
    for (auto m : modes)
      for (double e : eps)
        for (double p : phis) grid.push_back({n, m, e, p});

  std::vector<std::optional<EquivalenceCheck>> results(grid.size());
  const auto npts = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < npts; ++i) {
    const Point& p = grid[static_cast<std::size_t>(i)];
    try {
      results[static_cast<std::size_t>(i)] = check_equivalence(p.n, p.eps, p.phi, p.mode);
    } catch (const Error&) {
      // left empty: counted as a failed grid point
    }
  }

  std::size_t k = 0;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    double fa = 1.0, da = 0.0, fs = 1.0, ds = 0.0;
    bool ok = true, sched = false;
    const std::size_t per_n = std::size(modes) * eps.size() * phis.size();
    for (std::size_t j = 0; j < per_n; ++j, ++k) {
      const auto& res = results[k];
      if (!res) {
        ok = false;
        continue;
      }
      fa = std::min(fa, res->fidelity_analytic);
      da = std::max(da, res->prob_delta_analytic);
      if (res->fidelity_scheduler) {
        sched = true;
        fs = std::min(fs, *res->fidelity_scheduler);
        ds = std::max(ds, *res->prob_delta_scheduler);
      }
    }
    ok = ok && fa >= 1.0 - 1e-9 && da <= 1e-9 && (!sched || (fs >= 1.0 - 1e-9 && ds <= 1e-9));
    r.rows.push_back({std::int64_t{n}, static_cast<std::int64_t>(per_n), fa, da, sched ? Cell{fs} : Cell{},
                      sched ? Cell{ds} : Cell{}, true, ok});
  }
  tally(r);
  return r;
}

ScanReport run_experiment(const ScanConfig& config) {
  switch (config.experiment) {
    case Experiment::ps_scaling: return run_ps_scaling(config);
    case Experiment::aw_scaling: return run_aw_scaling(config);
    case Experiment::fisher_saturation: return run_fisher_saturation(config);
    case Experiment::circuit_check: return run_circuit_check(config);
  }
  throw ConfigError("unknown experiment");
}

std::string format_report(const ScanReport& report, ReportFormat format) {
  std::string out;
  const auto meta = metadata(report);
  if (format == ReportFormat::csv) {
    for (const auto& [k, v] : meta) out += "# " + k + "=" + csv_field(v) + "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? "," : "") + report.columns[i];
    out += "\n";
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
      out += "\n";
    }
    return out;
  }
  // Hand-assembled so that reals carry exactly 17 significant digits.
  out = "{\n";
  for (const auto& [k, v] : meta) out += "  " + json_string(k) + ": " + json_field(v) + ",\n";
  out += "  \"columns\": [";
  for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? ", " : "") + json_string(report.columns[i]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    out += r ? ",\n    {" : "\n    {";
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      out += (i ? ", " : "") + json_string(report.columns[i]) + ": " + json_field(report.rows[r][i]);
    }
    out += "}";
  }
  out += report.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void emit(const ScanReport& report, ReportFormat format, const std::string& path) {
  const std::string text = format_report(report, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string tool_version() { return EWVA_VERSION; }

std::string report_timestamp() {
  std::time_t t = 0;
  if (const char* s = std::getenv("SOURCE_DATE_EPOCH"); s && *s) {
    char* end = nullptr;
    const long long v = std::strtoll(s, &end, 10);
    if (end && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace ewva

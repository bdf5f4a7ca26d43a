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

// Scaling experiments and their machine-readable reports.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ewva {

enum class Experiment { ps_scaling, aw_scaling, fisher_saturation, circuit_check };
enum class Observable { sigma_z, projector };
enum class ReportFormat { csv, json };

std::string to_string(Experiment e);
std::string to_string(Observable o);
std::string to_string(ReportFormat f);
/// Throw ConfigError on unknown names.
Observable parse_observable(const std::string& s);
ReportFormat parse_format(const std::string& s);

struct ScanConfig {
  Experiment experiment = Experiment::ps_scaling;
  int n_min = 1;
  int n_max = 6;
  double epsilon = 0.05;
  double phi = 1e-3;
  double aw = 200.0;  // |A_w|
  Observable observable = Observable::sigma_z;
  std::uint64_t seed = 20240611;
  std::string out_path;  // empty: stdout
  ReportFormat format = ReportFormat::csv;

  /// Range checks shared by every experiment; throws ConfigError.
  void validate() const;
};

/// monostate is an empty cell (blank in CSV, null in JSON).
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct ScanReport {
  ScanConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  // emitted in n order
  std::string version;
  std::string timestamp;
  std::string rng;
  bool all_pass = true;  // over rows with regime_ok

  std::vector<Cell> column(const std::string& name) const;
};

/// Entangled vs independent maximal postselection probability at A_w = i|A_w|.
ScanReport run_ps_scaling(const ScanConfig& config);
/// Circuit weak value at P_s = sin^2(sqrt(n) eps) ~ n eps^2 against sqrt(n)/eps.
ScanReport run_aw_scaling(const ScanConfig& config);
/// Total vs postselected information at the fixed-A_w optimum. Throws
/// RegimeError when phi |A_w| > 0.1.
ScanReport run_fisher_saturation(const ScanConfig& config);
/// Circuit / analytic / three-qubit scheduler agreement over the grid
/// eps in {0.02, 0.05, 0.1, config.epsilon}, phi in {0, 0.005, config.phi},
/// both postselection modes.
ScanReport run_circuit_check(const ScanConfig& config);

ScanReport run_experiment(const ScanConfig& config);

/// |measured - analytic| / |analytic|; NaN when analytic is zero.
double relative_error(double measured, double analytic);

std::string format_report(const ScanReport& report, ReportFormat format);
/// Writes to report.config.out_path (stdout when empty). Throws IoError.
void emit(const ScanReport& report, ReportFormat format, const std::string& path);

/// Version baked in at build time.
std::string tool_version();
/// SOURCE_DATE_EPOCH as ISO-8601 UTC, or the epoch when unset, so that
/// reports are byte-identical across runs.
std::string report_timestamp();

}  // namespace ewva

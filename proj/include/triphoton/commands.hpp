// Copyright 2026 The triphoton Authors
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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "triphoton/analysis.hpp"
#include "triphoton/config.hpp"
#include "triphoton/dynamics.hpp"
#include "triphoton/integrator.hpp"

namespace triphoton {

std::string version();

/// 16 hex digits identifying a configuration and code version. Written into every output file.
std::string run_id(const SimConfig& config);

/// Text used in snapshot file names, e.g. "0.216".
std::string snapshot_label(double t_kappa);

/// Integration step for a run. A user dt must put t_final and every snapshot on the step
/// grid (ConfigError "dt" otherwise); dt = 0 selects default_time_step.
double resolve_time_step(const SimConfig& config, const Liouvillian& liouvillian);

struct ObservableRow {
  double t_kappa = 0.0;
  double time = 0.0;
  ModeObservables values;
  double trace = 0.0;
  double off_sector = 0.0;
  double raw_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct Snapshot {
  double t_kappa = 0.0;
  ReducedState reduced;
  std::vector<double> distribution;
};

struct SimulationResult {
  SimConfig config;
  double dt = 0.0;
  std::size_t record_stride = 1;
  std::vector<ObservableRow> series;
  // In the order of config.snapshots_kappa.
  std::vector<Snapshot> snapshots;
  EvolveSummary summary;
  double max_off_sector = 0.0;
  // Largest population of a basis state at the cutoff of n0, n1, n2 over the records.
  std::array<double, 3> edge_population{};
};

/// Runs the configured evolution in memory. Throws ConfigError or NumericalAbort.
SimulationResult simulate(const SimConfig& config);

struct EvolveOutputs {
  std::string run_id;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
  SimulationResult result;
};

/// Writes into `out_dir`:
///   observables.dat               t_kappa t n0 n1 n2 excited purity trace off_sector ...
///   snapshot_tk<label>.dat        reduced omega1 state as (row, col, re, im)
///   distribution_tk<label>.dat    n p
///   manifest.txt
/// Data files depend only on the configuration; wall times appear in the manifest alone.
/// On NumericalAbort the manifest is written with the failure and the exception rethrown.
EvolveOutputs cmd_evolve(const SimConfig& config, const std::filesystem::path& out_dir);

/// A reduced-state snapshot read back from disk.
struct SnapshotFile {
  std::string run_id;
  std::string label;
  double t_kappa = 0.0;
  ReducedState reduced;
};

/// Throws ConfigError("snapshot") for unreadable or malformed files.
SnapshotFile read_snapshot(const std::filesystem::path& path);
void write_snapshot(const std::filesystem::path& path, const std::string& run_id, double t_kappa,
                    const ReducedState& reduced);

struct WignerOutput {
  std::filesystem::path file;
  WignerGrid grid;
};

/// Writes wigner_tk<label>.dat with columns x p W.
WignerOutput cmd_wigner(const std::filesystem::path& snapshot, const GridSpec& spec,
                        const std::filesystem::path& out_dir);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Oracle equivalence and invariant checks. Dynamical checks run over a short horizon,
/// t*kappa = 0.01, using the configured dt (or the default one).
ValidationReport cmd_validate(const SimConfig& config);

/// One line per check: "PASS|FAIL <tab> name <tab> value <tab> threshold <tab> detail".
std::string format_report(const ValidationReport& report);

struct ConvergenceEntry {
  std::string variant;
  double t_kappa = 0.0;
  double max_change = 0.0;
  bool converged = false;
};

struct ConvergenceReport {
  double tolerance = 1e-6;
  double dt = 0.0;
  std::vector<ConvergenceEntry> entries;
  bool converged() const;
};

/// Reruns the evolution with each truncation raised by one and with dt halved, and reports
/// max_n |p(n) - p_base(n)| for the omega1 distribution at every snapshot. All variants use
/// the base run's dt (halved for the dt/2 variant) and stop at the last snapshot.
ConvergenceReport cmd_converge(const SimConfig& config, double tolerance = 1e-6);

/// "variant <tab> t_kappa <tab> max_change <tab> ok|NOT_CONVERGED" lines plus a summary.
std::string format_report(const ConvergenceReport& report);

}  // namespace triphoton

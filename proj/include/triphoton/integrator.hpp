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

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triphoton/config.hpp"
#include "triphoton/dynamics.hpp"

namespace triphoton {

/// State of the full system at one instant. `time` is in hbar/meV.
struct DensityMatrix {
  FockSpace space;
  Matrix rho;
  double time = 0.0;
  Frame frame = Frame::rotating;

  Complex trace() const { return rho.trace(); }
  /// max |rho - rho^dag|.
  double hermiticity_error() const;
  double purity() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
};

DensityMatrix initial_state(const FockSpace& space, const InitialStateSpec& spec, Frame frame = Frame::rotating);
/// Parses `spec` first; throws ConfigError for unknown or out-of-range states.
DensityMatrix initial_state(const FockSpace& space, std::string_view spec, Frame frame = Frame::rotating);

struct EvolveOptions {
  double t_final = 0.0;
  double dt = 0.0;
  std::size_t record_stride = 1;
  // Extra times (hbar/meV) that are always recorded; each must be a multiple of dt.
  std::vector<double> checkpoints;
  bool check_positivity = true;
};

/// A recorded point of a trajectory. `state` is already re-symmetrized.
struct RecordPoint {
  std::size_t step;
  const DensityMatrix& state;
  double raw_hermiticity_error;
  // NaN when positivity checks are disabled.
  double min_eigenvalue;
};

struct EvolveSummary {
  std::size_t steps = 0;
  std::size_t records = 0;
  double max_trace_drift = 0.0;
  double max_raw_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> warnings;
};

using Observer = std::function<void(const RecordPoint&)>;

/// Fixed-step classical RK4 on d rho/dt = L(rho), over [0, t_final].
///
/// The state is propagated on the charge-sector blocks reachable from rho0's support; all
/// other entries of rho stay exactly zero under L. Points are recorded at step 0, every
/// `record_stride` steps, at each checkpoint and at the final step. Recording never touches
/// the propagated state, so trajectories agree bit for bit across strides.
///
/// Preconditions: dt > 0 and dt * max|H_ij| <= 0.1 (ConfigError on "dt" otherwise), and
/// t_final and checkpoints on the step grid (std::invalid_argument otherwise).
/// Throws NumericalAbort on non-finite values or |Tr rho - Tr rho0| > 1e-6.
EvolveSummary evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options,
                     const Observer& observer);

struct Trajectory {
  std::vector<std::size_t> steps;
  std::vector<DensityMatrix> states;
  EvolveSummary summary;
};

/// Convenience overload keeping every recorded state; fine for small spaces.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options);

struct StepConvergenceReport {
  double dt = 0.0;
  double max_abs_difference = 0.0;
};

/// Runs to t_final at dt and dt/2 and reports the max-abs difference of the final states.
StepConvergenceReport step_convergence(const DensityMatrix& rho0, const Liouvillian& liouvillian, double t_final,
                                       double dt);

/// Number of steps of size dt that land on time t; throws std::invalid_argument if t is not
/// on the grid (relative tolerance 1e-9).
std::size_t steps_to(double t, double dt);

/// Largest dt <= target_dt such that every stop time is an integer number of steps.
/// Throws std::invalid_argument if no such dt exists within 10^7 steps.
double aligned_time_step(double target_dt, std::span<const double> stop_times);

/// Default step: dt * max(Gershgorin bound of H, dissipation bound) = 0.02, aligned to the
/// stop times.
double default_time_step(const Liouvillian& liouvillian, std::span<const double> stop_times);

}  // namespace triphoton

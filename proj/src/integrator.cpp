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

#include "triphoton/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace triphoton {

double DensityMatrix::hermiticity_error() const {
  if (rho.size() == 0) return 0.0;
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij rho_ij rho_ji
  return (rho.cwiseProduct(rho.transpose())).sum().real();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix hermitian = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix initial_state(const FockSpace& space, const InitialStateSpec& spec, Frame frame) {
  if (spec.components.empty()) throw ConfigError("initial_state", "no components");
  const auto dim = static_cast<Index>(space.dim());
  DensityMatrix state{space, Matrix::Zero(dim, dim), 0.0, frame};
  for (const auto& component : spec.components) {
    if (!space.contains(component.state)) {
      throw ConfigError("initial_state", to_string(component.state) + " lies outside the truncation");
    }
    const auto i = static_cast<Index>(space.index(component.state));
    state.rho(i, i) += component.weight;
  }
  return state;
}

DensityMatrix initial_state(const FockSpace& space, std::string_view spec, Frame frame) {
  return initial_state(space, InitialStateSpec::parse(spec), frame);
}

std::size_t steps_to(double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (t < 0.0) throw std::invalid_argument("times must be >= 0");
  const double ratio = t / dt;
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "time " << t << " is not a multiple of dt " << dt;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(steps);
}

double aligned_time_step(double target_dt, std::span<const double> stop_times) {
  if (!(target_dt > 0.0)) throw std::invalid_argument("target dt must be > 0");
  double longest = 0.0;
  for (double t : stop_times) longest = std::max(longest, t);
  if (longest == 0.0) return target_dt;

  constexpr std::size_t kMaxSteps = 10'000'000;
  for (auto n = static_cast<std::size_t>(std::ceil(longest / target_dt * (1.0 - 1e-12))); n <= kMaxSteps; ++n) {
    const double dt = longest / static_cast<double>(n);
    const bool aligned = std::all_of(stop_times.begin(), stop_times.end(), [&](double t) {
      const double ratio = t / dt;
      return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio);
    });
    if (aligned) return dt;
  }
  throw std::invalid_argument("stop times share no common step below the target dt");
}

double default_time_step(const Liouvillian& liouvillian, std::span<const double> stop_times) {
  const double bound = std::max(liouvillian.spectral_bound(), liouvillian.dissipation_bound());
  const double target = bound > 0.0 ? 0.02 / bound : std::numeric_limits<double>::max();
  double longest = 0.0;
  for (double t : stop_times) longest = std::max(longest, t);
  return aligned_time_step(std::min(target, longest > 0.0 ? longest : 1.0), stop_times);
}

namespace {

void axpy_into(const BlockedState& y, double h, const BlockedState& k, BlockedState& out) {
  out.pattern = y.pattern;
  out.blocks.resize(y.blocks.size());
  for (std::size_t b = 0; b < y.blocks.size(); ++b) out.blocks[b] = y.blocks[b] + h * k.blocks[b];
}

void rk4_step(const Liouvillian& liouvillian, double dt, BlockedState& y, BlockedState& k1, BlockedState& k2,
              BlockedState& k3, BlockedState& k4, BlockedState& tmp) {
  liouvillian.apply_blocked(y, k1);
  axpy_into(y, 0.5 * dt, k1, tmp);
  liouvillian.apply_blocked(tmp, k2);
  axpy_into(y, 0.5 * dt, k2, tmp);
  liouvillian.apply_blocked(tmp, k3);
  axpy_into(y, dt, k3, tmp);
  liouvillian.apply_blocked(tmp, k4);
  const double w = dt / 6.0;
  for (std::size_t b = 0; b < y.blocks.size(); ++b) {
    y.blocks[b] += w * (k1.blocks[b] + 2.0 * k2.blocks[b] + 2.0 * k3.blocks[b] + k4.blocks[b]);
  }
}

bool all_finite(const BlockedState& y) {
  return std::all_of(y.blocks.begin(), y.blocks.end(), [](const Matrix& m) { return m.allFinite(); });
}

Complex blocked_trace(const BlockedState& y) {
  Complex trace = 0.0;
  for (std::size_t b = 0; b < y.blocks.size(); ++b) {
    const auto& entry = y.pattern->entries[b];
    if (entry.row_sector == entry.col_sector) trace += y.blocks[b].trace();
  }
  return trace;
}

// Uses the sector blocks when the pattern is block diagonal.
double blocked_min_eigenvalue(const BlockedState& y, const DensityMatrix& dense) {
  const bool diagonal = std::all_of(y.pattern->entries.begin(), y.pattern->entries.end(),
                                    [](const auto& e) { return e.row_sector == e.col_sector; });
  if (!diagonal) return dense.min_eigenvalue();
  double smallest = std::numeric_limits<double>::infinity();
  for (const Matrix& block : y.blocks) {
    const Matrix hermitian = 0.5 * (block + block.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    smallest = std::min(smallest, solver.eigenvalues().minCoeff());
  }
  // Entries outside the pattern contribute zero eigenvalues.
  std::size_t covered = 0;
  for (const Matrix& block : y.blocks) covered += static_cast<std::size_t>(block.rows());
  if (covered < dense.space.dim()) smallest = std::min(smallest, 0.0);
  return smallest;
}

}  // namespace

EvolveSummary evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options,
                     const Observer& observer) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw ConfigError("dt", "must be > 0");
  if (!(rho0.space == liouvillian.space())) {
    throw std::invalid_argument("initial state and Liouvillian live on different Fock spaces");
  }
  const double resolution = options.dt * liouvillian.hamiltonian_max_abs();
  if (resolution > 0.1) {
    std::ostringstream msg;
    msg << "dt * max|H| = " << resolution << " exceeds 0.1; reduce dt";
    throw ConfigError("dt", msg.str());
  }
  const std::size_t total_steps = steps_to(options.t_final, options.dt);
  const std::size_t stride = std::max<std::size_t>(options.record_stride, 1);
  std::set<std::size_t> checkpoint_steps;
  for (double t : options.checkpoints) {
    const std::size_t s = steps_to(t, options.dt);
    if (s > total_steps) throw std::invalid_argument("checkpoint lies beyond t_final");
    checkpoint_steps.insert(s);
  }

  BlockedState y = liouvillian.block(rho0.rho);
  BlockedState k1, k2, k3, k4, tmp;
  const Complex initial_trace = blocked_trace(y);

  EvolveSummary summary;
  summary.min_eigenvalue = std::numeric_limits<double>::infinity();

  auto record = [&](std::size_t step) {
    DensityMatrix state{rho0.space, liouvillian.unblock(y), static_cast<double>(step) * options.dt, rho0.frame};
    const double raw_error = state.hermiticity_error();
    state.rho = 0.5 * (state.rho + state.rho.adjoint()).eval();

    const double drift = std::abs(state.trace() - initial_trace);
    if (drift > 1e-6) {
      std::ostringstream msg;
      msg << "trace drifted by " << drift << " at t = " << state.time;
      throw NumericalAbort(step, msg.str());
    }
    double lowest = std::numeric_limits<double>::quiet_NaN();
    if (options.check_positivity) {
      lowest = blocked_min_eigenvalue(y, state);
      summary.min_eigenvalue = std::min(summary.min_eigenvalue, lowest);
      if (lowest < -1e-8) {
        std::ostringstream msg;
        msg << "step " << step << ": min eigenvalue " << lowest << " below -1e-8";
        summary.warnings.push_back(msg.str());
      }
    }
    summary.max_trace_drift = std::max(summary.max_trace_drift, drift);
    summary.max_raw_hermiticity_error = std::max(summary.max_raw_hermiticity_error, raw_error);
    ++summary.records;
    if (observer) observer(RecordPoint{step, state, raw_error, lowest});
  };

  record(0);
  for (std::size_t step = 1; step <= total_steps; ++step) {
    rk4_step(liouvillian, options.dt, y, k1, k2, k3, k4, tmp);
    if (!all_finite(y)) throw NumericalAbort(step, "non-finite density matrix entries");
    if (step % stride == 0 || step == total_steps || checkpoint_steps.count(step) != 0) record(step);
  }
  summary.steps = total_steps;
  if (!options.check_positivity) summary.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  return summary;
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian, const EvolveOptions& options) {
  Trajectory trajectory;
  trajectory.summary = evolve(rho0, liouvillian, options, [&](const RecordPoint& point) {
    trajectory.steps.push_back(point.step);
    trajectory.states.push_back(point.state);
  });
  return trajectory;
}

StepConvergenceReport step_convergence(const DensityMatrix& rho0, const Liouvillian& liouvillian, double t_final,
                                       double dt) {
  auto final_state = [&](double step) {
    Matrix last;
    EvolveOptions options{t_final, step, std::numeric_limits<std::size_t>::max(), {}, false};
    evolve(rho0, liouvillian, options, [&](const RecordPoint& point) { last = point.state.rho; });
    return last;
  };
  const Matrix coarse = final_state(dt);
  const Matrix fine = final_state(0.5 * dt);
  return {dt, coarse.size() == 0 ? 0.0 : (coarse - fine).cwiseAbs().maxCoeff()};
}

}  // namespace triphoton

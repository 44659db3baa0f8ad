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

#include <string>
#include <string_view>
#include <vector>

#include "triphoton/fock_space.hpp"

namespace triphoton {

/// One weighted pure basis state of an initial mixture.
struct InitialComponent {
  double weight = 1.0;
  BasisState state;
};

/// Diagonal initial state sum_k w_k |s_k><s_k|.
///
/// Text form: "e,0,0,0" for a pure state, or "0.5*g,0,0,0 + 0.5*e,0,0,0" for a
/// mixture. Weights must be non-negative and sum to one.
struct InitialStateSpec {
  std::vector<InitialComponent> components;

  /// Throws ConfigError (key "initial_state") on malformed text.
  static InitialStateSpec parse(std::string_view text);
  std::string to_string() const;
};

/// All physical and numerical parameters of a run. Energies and rates in meV, hbar = 1,
/// so times are in hbar/meV. Defaults are the production parameters.
struct SimConfig {
  double omega0_mev = 500.0;
  double omega_qd_mev = 500.0;
  double g_mev = 5.0;
  double zeta_mev = 3.0;
  double xi_mev = 1.0;
  double kappa_mev = 0.1;
  double pump_mev = 1.0e-4;

  Frame frame = Frame::rotating;
  Truncation truncation;

  // Integration step in hbar/meV; 0 selects dt * (Gershgorin bound of H) = 0.02.
  double dt = 0.0;
  double t_final_kappa = 0.5;
  // Internal steps between recorded points; 0 selects roughly 500 records per run.
  std::size_t record_stride = 0;
  std::vector<double> snapshots_kappa{0.0, 0.216, 0.328};
  std::string initial_state = "e,0,0,0";

  double grid_max = 6.0;
  int grid_n = 201;

  /// omega0 - omega_qd.
  double detuning() const { return omega0_mev - omega_qd_mev; }

  /// Checks the physical parameters only: finite energies, non-negative rates.
  /// Throws ConfigError naming the first offending key.
  void validate_physics() const;
};

}  // namespace triphoton

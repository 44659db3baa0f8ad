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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "triphoton/config.hpp"

namespace triphoton {

/// Builds a SimConfig from defaults, then an optional flat key-value file, then
/// `key=value` overrides (last wins). File syntax: one `key = value` per line, `#` starts a
/// comment. Keys:
///
///   omega0_mev omega_qd_mev g_mev zeta_mev xi_mev kappa_mev pump_mev
///   frame (lab|rotating) trunc0 trunc1 trunc2
///   dt t_final_kappa record_stride snapshots_kappa (comma separated) initial_state
///   grid_max grid_n
///
/// Throws ConfigError naming the key for unknown keys, unparsable values, negative rates and
/// other invalid settings, and with key "config" for an unreadable file.
SimConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const std::vector<std::string>& overrides = {});

/// Applies one `key = value` assignment.
void apply_setting(SimConfig& config, const std::string& key, const std::string& value);

/// Full check of a run configuration, beyond validate_physics: kappa > 0 (the time axis is
/// t*kappa), truncations, times, grid, and the initial state.
void validate_run_config(const SimConfig& config);

/// Canonical `key = value` text of every setting, in a fixed order. Parses back to the same
/// config.
std::string to_config_text(const SimConfig& config);

/// "g/kappa=50 zeta/kappa=30 xi/kappa=10 kappa/P=1000" style summary.
std::string describe_ratios(const SimConfig& config);

/// Shortest round-trip decimal text of a double.
std::string format_number(double value);

}  // namespace triphoton

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

#include "triphoton/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace triphoton {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "'" + text + "' is not a finite number");
  }
  return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "'" + text + "' is not an integer");
  return value;
}

int parse_truncation(const std::string& key, const std::string& text) {
  const long long value = parse_integer(key, text);
  if (value < 0) throw ConfigError(key, "must be >= 0");
  if (value > 1000) throw ConfigError(key, "unreasonably large truncation");
  return static_cast<int>(value);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_double(key, trim(item)));
  if (values.empty()) throw ConfigError(key, "empty list");
  return values;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ec == std::errc() ? ptr : buffer);
}

void apply_setting(SimConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (value.empty()) throw ConfigError(key, "missing value");

  if (key == "omega0_mev") {
    c.omega0_mev = parse_double(key, value);
  } else if (key == "omega_qd_mev") {
    c.omega_qd_mev = parse_double(key, value);
  } else if (key == "g_mev") {
    c.g_mev = parse_double(key, value);
  } else if (key == "zeta_mev") {
    c.zeta_mev = parse_double(key, value);
  } else if (key == "xi_mev") {
    c.xi_mev = parse_double(key, value);
  } else if (key == "kappa_mev") {
    c.kappa_mev = parse_double(key, value);
  } else if (key == "pump_mev") {
    c.pump_mev = parse_double(key, value);
  } else if (key == "frame") {
    if (value == "lab") {
      c.frame = Frame::lab;
    } else if (value == "rotating") {
      c.frame = Frame::rotating;
    } else {
      throw ConfigError(key, "must be 'lab' or 'rotating'");
    }
  } else if (key == "trunc0") {
    c.truncation.n0 = parse_truncation(key, value);
  } else if (key == "trunc1") {
    c.truncation.n1 = parse_truncation(key, value);
  } else if (key == "trunc2") {
    c.truncation.n2 = parse_truncation(key, value);
  } else if (key == "dt") {
    c.dt = parse_double(key, value);
  } else if (key == "t_final_kappa") {
    c.t_final_kappa = parse_double(key, value);
  } else if (key == "record_stride") {
    const long long stride = parse_integer(key, value);
    if (stride < 0) throw ConfigError(key, "must be >= 0");
    c.record_stride = static_cast<std::size_t>(stride);
  } else if (key == "snapshots_kappa") {
    c.snapshots_kappa = parse_list(key, value);
  } else if (key == "initial_state") {
    c.initial_state = value;
  } else if (key == "grid_max") {
    c.grid_max = parse_double(key, value);
  } else if (key == "grid_n") {
    const long long n = parse_integer(key, value);
    if (n < 2 || n > 100000) throw ConfigError(key, "must be in [2, 100000]");
    c.grid_n = static_cast<int>(n);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void validate_run_config(const SimConfig& c) {
  c.validate_physics();
  if (!(c.kappa_mev > 0.0)) throw ConfigError("kappa_mev", "must be > 0: times are given as t*kappa");
  try {
    FockSpace space(c.truncation);
    const auto initial = InitialStateSpec::parse(c.initial_state);
    for (const auto& component : initial.components) {
      if (!space.contains(component.state)) {
        throw ConfigError("initial_state", to_string(component.state) + " lies outside the truncation");
      }
    }
  } catch (const std::length_error& e) {
    throw ConfigError("trunc0", e.what());
  }
  if (c.dt < 0.0) throw ConfigError("dt", "must be >= 0 (0 selects automatically)");
  if (!(c.t_final_kappa > 0.0)) throw ConfigError("t_final_kappa", "must be > 0");
  for (double t : c.snapshots_kappa) {
    if (t < 0.0 || t > c.t_final_kappa) throw ConfigError("snapshots_kappa", "times must lie in [0, t_final_kappa]");
  }
  if (!(c.grid_max > 0.0)) throw ConfigError("grid_max", "must be > 0");
  if (c.grid_n < 2) throw ConfigError("grid_n", "must be >= 2");
}

SimConfig parse_config(const std::optional<std::filesystem::path>& path, const std::vector<std::string>& overrides) {
  SimConfig config;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "cannot read config file '" + path->string() + "'");
    std::set<std::string> seen;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config", path->string() + ":" + std::to_string(line_number) + ": expected 'key = value'");
      }
      const std::string key = trim(line.substr(0, eq));
      if (!seen.insert(key).second) throw ConfigError(key, "set twice in " + path->string());
      apply_setting(config, key, line.substr(eq + 1));
    }
  }
  for (const auto& assignment : overrides) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(trim(assignment), "override must be key=value");
    apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
  }
  validate_run_config(config);
  return config;
}

std::string to_config_text(const SimConfig& c) {
  std::ostringstream out;
  out << "omega0_mev = " << format_number(c.omega0_mev) << "\n"
      << "omega_qd_mev = " << format_number(c.omega_qd_mev) << "\n"
      << "g_mev = " << format_number(c.g_mev) << "\n"
      << "zeta_mev = " << format_number(c.zeta_mev) << "\n"
      << "xi_mev = " << format_number(c.xi_mev) << "\n"
      << "kappa_mev = " << format_number(c.kappa_mev) << "\n"
      << "pump_mev = " << format_number(c.pump_mev) << "\n"
      << "frame = " << to_string(c.frame) << "\n"
      << "trunc0 = " << c.truncation.n0 << "\n"
      << "trunc1 = " << c.truncation.n1 << "\n"
      << "trunc2 = " << c.truncation.n2 << "\n"
      << "dt = " << format_number(c.dt) << "\n"
      << "t_final_kappa = " << format_number(c.t_final_kappa) << "\n"
      << "record_stride = " << c.record_stride << "\n"
      << "snapshots_kappa = ";
  for (std::size_t k = 0; k < c.snapshots_kappa.size(); ++k) {
    out << (k ? "," : "") << format_number(c.snapshots_kappa[k]);
  }
  out << "\n"
      << "initial_state = " << c.initial_state << "\n"
      << "grid_max = " << format_number(c.grid_max) << "\n"
      << "grid_n = " << c.grid_n << "\n";
  return out.str();
}

std::string describe_ratios(const SimConfig& c) {
  std::ostringstream out;
  out << "g/kappa=" << format_number(c.g_mev / c.kappa_mev) << " zeta/kappa=" << format_number(c.zeta_mev / c.kappa_mev)
      << " xi/kappa=" << format_number(c.xi_mev / c.kappa_mev)
      << " kappa/P=" << (c.pump_mev > 0.0 ? format_number(c.kappa_mev / c.pump_mev) : std::string("inf"));
  return out.str();
}

}  // namespace triphoton

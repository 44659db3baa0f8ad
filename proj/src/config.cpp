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

#include "triphoton/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace triphoton {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_state(std::string_view text, const std::string& why) {
  throw ConfigError("initial_state", "cannot parse '" + std::string(text) + "': " + why);
}

int parse_occupation(std::string_view token, std::string_view whole) {
  token = trim(token);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    bad_state(whole, "photon number '" + std::string(token) + "' is not a non-negative integer");
  }
  return value;
}

BasisState parse_basis_state(std::string_view text) {
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '|') body.remove_prefix(1);
  if (!body.empty() && body.back() == '>') body.remove_suffix(1);

  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    fields.push_back(body.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 4) bad_state(text, "expected 4 fields 'dot,n0,n1,n2'");

  BasisState s;
  const auto dot = trim(fields[0]);
  if (dot == "g") {
    s.dot = DotLevel::ground;
  } else if (dot == "e") {
    s.dot = DotLevel::excited;
  } else {
    bad_state(text, "dot level must be 'g' or 'e'");
  }
  s.n0 = parse_occupation(fields[1], text);
  s.n1 = parse_occupation(fields[2], text);
  s.n2 = parse_occupation(fields[3], text);
  return s;
}

}  // namespace

InitialStateSpec InitialStateSpec::parse(std::string_view text) {
  InitialStateSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto term = trim(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
    if (term.empty()) bad_state(text, "empty component");

    InitialComponent component;
    std::string_view state_text = term;
    if (const auto star = term.find('*'); star != std::string_view::npos) {
      const std::string weight(trim(term.substr(0, star)));
      std::size_t used = 0;
      try {
        component.weight = std::stod(weight, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != weight.size() || !std::isfinite(component.weight)) {
        bad_state(text, "weight '" + weight + "' is not a number");
      }
      state_text = term.substr(star + 1);
    }
    if (component.weight < 0.0) bad_state(text, "weights must be non-negative");
    component.state = parse_basis_state(state_text);
    spec.components.push_back(component);

    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }

  double total = 0.0;
  for (const auto& c : spec.components) total += c.weight;
  if (std::abs(total - 1.0) > 1e-12) bad_state(text, "weights sum to " + std::to_string(total) + ", not 1");
  return spec;
}

std::string InitialStateSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& s = components[k].state;
    if (k > 0) out << " + ";
    if (components.size() > 1) out << components[k].weight << "*";
    out << (s.excited() ? "e" : "g") << "," << s.n0 << "," << s.n1 << "," << s.n2;
  }
  return out.str();
}

void SimConfig::validate_physics() const {
  const std::pair<const char*, double> energies[] = {{"omega0_mev", omega0_mev}, {"omega_qd_mev", omega_qd_mev}};
  for (const auto& [key, value] : energies) {
    if (!std::isfinite(value)) throw ConfigError(key, "must be finite");
  }
  const std::pair<const char*, double> rates[] = {{"g_mev", g_mev},         {"zeta_mev", zeta_mev},
                                                  {"xi_mev", xi_mev},       {"kappa_mev", kappa_mev},
                                                  {"pump_mev", pump_mev}};
  for (const auto& [key, value] : rates) {
    if (!std::isfinite(value)) throw ConfigError(key, "must be finite");
    if (value < 0.0) throw ConfigError(key, "must be >= 0 (got " + std::to_string(value) + ")");
  }
}

}  // namespace triphoton

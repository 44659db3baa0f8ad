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

#include "triphoton/commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "triphoton/config_io.hpp"
#include "triphoton/oracle.hpp"

#ifndef TRIPHOTON_VERSION
#define TRIPHOTON_VERSION "unknown"
#endif

namespace triphoton {

namespace fs = std::filesystem;

namespace {

constexpr double kValidateHorizonKappa = 0.01;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string wall_clock() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("out", "cannot write '" + path.string() + "'");
  return out;
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("out", "cannot create directory '" + dir.string() + "'");
}

double max_padded_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) {
    const double x = n < a.size() ? a[n] : 0.0;
    const double y = n < b.size() ? b[n] : 0.0;
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

std::vector<double> stop_times(const SimConfig& config) {
  std::vector<double> times{config.t_final_kappa / config.kappa_mev};
  for (double tk : config.snapshots_kappa) times.push_back(tk / config.kappa_mev);
  return times;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

}  // namespace

std::string version() { return TRIPHOTON_VERSION; }

std::string run_id(const SimConfig& config) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a(version() + "\n" + to_config_text(config))));
  return buffer;
}

std::string snapshot_label(double t_kappa) { return format_number(t_kappa); }

double resolve_time_step(const SimConfig& config, const Liouvillian& liouvillian) {
  const std::vector<double> times = stop_times(config);
  if (config.dt == 0.0) return default_time_step(liouvillian, times);
  for (double t : times) {
    try {
      steps_to(t, config.dt);
    } catch (const std::invalid_argument&) {
      throw ConfigError("dt", "t*kappa = " + format_number(t * config.kappa_mev) + " is not a whole number of steps");
    }
  }
  return config.dt;
}

SimulationResult simulate(const SimConfig& config) {
  validate_run_config(config);
  const FockSpace space(config.truncation);
  const Liouvillian liouvillian(space, config);

  SimulationResult result;
  result.config = config;
  result.dt = resolve_time_step(config, liouvillian);

  EvolveOptions options;
  options.t_final = config.t_final_kappa / config.kappa_mev;
  options.dt = result.dt;
  const std::size_t total = steps_to(options.t_final, options.dt);
  result.record_stride = config.record_stride > 0 ? config.record_stride : std::max<std::size_t>(1, total / 500);
  options.record_stride = result.record_stride;

  std::multimap<std::size_t, std::size_t> snapshot_at;
  for (std::size_t k = 0; k < config.snapshots_kappa.size(); ++k) {
    const double t = config.snapshots_kappa[k] / config.kappa_mev;
    options.checkpoints.push_back(t);
    snapshot_at.emplace(steps_to(t, options.dt), k);
  }
  result.snapshots.resize(config.snapshots_kappa.size());

  const DensityMatrix rho0 = initial_state(space, config.initial_state, config.frame);
  result.summary = evolve(rho0, liouvillian, options, [&](const RecordPoint& point) {
    ObservableRow row;
    row.time = static_cast<double>(point.step) * options.dt;
    row.t_kappa = row.time * config.kappa_mev;
    row.values = mode_observables(point.state);
    row.trace = point.state.trace().real();
    row.off_sector = off_sector_population(point.state);
    row.raw_hermiticity_error = point.raw_hermiticity_error;
    row.min_eigenvalue = point.min_eigenvalue;
    result.max_off_sector = std::max(result.max_off_sector, row.off_sector);
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const BasisState s = space.state(i);
      const double p = point.state.rho(static_cast<Index>(i), static_cast<Index>(i)).real();
      if (s.n0 == space.truncation().n0) result.edge_population[0] = std::max(result.edge_population[0], p);
      if (s.n1 == space.truncation().n1) result.edge_population[1] = std::max(result.edge_population[1], p);
      if (s.n2 == space.truncation().n2) result.edge_population[2] = std::max(result.edge_population[2], p);
    }
    result.series.push_back(row);

    const auto [first, last] = snapshot_at.equal_range(point.step);
    for (auto it = first; it != last; ++it) {
      Snapshot& snap = result.snapshots[it->second];
      snap.t_kappa = config.snapshots_kappa[it->second];
      snap.reduced = reduce_to_mode1(point.state);
      snap.distribution = photon_distribution(snap.reduced);
    }
  });
  return result;
}

void write_snapshot(const fs::path& path, const std::string& id, double t_kappa, const ReducedState& reduced) {
  std::ofstream out = open_output(path);
  out << "# triphoton reduced_state\n"
      << "# run_id: " << id << "\n"
      << "# version: " << version() << "\n"
      << "# mode: omega1\n"
      << "# frame: " << to_string(reduced.frame) << "\n"
      << "# t_kappa: " << format_number(t_kappa) << "\n"
      << "# time: " << format_number(reduced.time) << "\n"
      << "# dim: " << reduced.rho.rows() << "\n"
      << "# units: t_kappa = t*kappa (dimensionless), time in hbar/meV, elements dimensionless\n"
      << "# columns: row col re im\n";
  for (Index i = 0; i < reduced.rho.rows(); ++i) {
    for (Index j = 0; j < reduced.rho.cols(); ++j) {
      out << i << ' ' << j << ' ' << format_number(reduced.rho(i, j).real()) << ' '
          << format_number(reduced.rho(i, j).imag()) << '\n';
    }
  }
}

namespace {

void write_observables(const fs::path& path, const std::string& id, const SimulationResult& result) {
  std::ofstream out = open_output(path);
  out << "# triphoton observables\n"
      << "# run_id: " << id << "\n"
      << "# version: " << version() << "\n"
      << "# frame: " << to_string(result.config.frame) << "\n"
      << "# units: t_kappa = t*kappa (dimensionless), t in hbar/meV, mean photon numbers and populations "
         "dimensionless\n"
      << "# columns: t_kappa t n0 n1 n2 excited purity trace off_sector min_eigenvalue raw_hermiticity_error\n";
  for (const ObservableRow& row : result.series) {
    out << format_number(row.t_kappa) << ' ' << format_number(row.time) << ' ' << format_number(row.values.n0) << ' '
        << format_number(row.values.n1) << ' ' << format_number(row.values.n2) << ' '
        << format_number(row.values.excited) << ' ' << format_number(row.values.purity) << ' '
        << format_number(row.trace) << ' ' << format_number(row.off_sector) << ' '
        << format_number(row.min_eigenvalue) << ' ' << format_number(row.raw_hermiticity_error) << '\n';
  }
}

void write_distribution(const fs::path& path, const std::string& id, Frame frame, const Snapshot& snap) {
  std::ofstream out = open_output(path);
  out << "# triphoton photon_distribution\n"
      << "# run_id: " << id << "\n"
      << "# version: " << version() << "\n"
      << "# mode: omega1\n"
      << "# frame: " << to_string(frame) << "\n"
      << "# t_kappa: " << format_number(snap.t_kappa) << "\n"
      << "# units: n photon number, p probability (dimensionless)\n"
      << "# columns: n p\n";
  for (std::size_t n = 0; n < snap.distribution.size(); ++n) out << n << ' ' << format_number(snap.distribution[n]) << '\n';
}

struct ManifestInfo {
  std::string status = "ok";
  std::string start;
  std::string end;
  double elapsed = 0.0;
  const SimulationResult* result = nullptr;
  std::vector<fs::path> files;
};

void write_manifest(const fs::path& path, const SimConfig& config, const std::string& id, const ManifestInfo& info) {
  std::ofstream out = open_output(path);
  out << "# triphoton run manifest\n"
      << "run_id: " << id << "\n"
      << "version: " << version() << "\n"
      << "status: " << info.status << "\n"
      << "start_time: " << info.start << "\n"
      << "end_time: " << info.end << "\n"
      << "elapsed_seconds: " << info.elapsed << "\n"
      << "frame: " << to_string(config.frame) << "\n"
      << "ratios: " << describe_ratios(config) << "\n";
  if (std::find(config.snapshots_kappa.begin(), config.snapshots_kappa.end(), 0.328) != config.snapshots_kappa.end()) {
    out << "note: the 0.328 snapshot is read as t*kappa = 0.328, like the other snapshot times, although it is "
           "often quoted as a bare t\n";
  }
  std::istringstream config_text(to_config_text(config));
  for (std::string line; std::getline(config_text, line);) out << "config." << line << "\n";
  if (info.result) {
    const SimulationResult& r = *info.result;
    out << "dt: " << format_number(r.dt) << "\n"
        << "steps: " << r.summary.steps << "\n"
        << "record_stride: " << r.record_stride << "\n"
        << "records: " << r.summary.records << "\n"
        << "max_trace_drift: " << format_number(r.summary.max_trace_drift) << "\n"
        << "max_raw_hermiticity_error: " << format_number(r.summary.max_raw_hermiticity_error) << "\n"
        << "min_eigenvalue: " << format_number(r.summary.min_eigenvalue) << "\n"
        << "max_off_sector_population: " << format_number(r.max_off_sector) << "\n"
        << "max_edge_population: n0=" << format_number(r.edge_population[0])
        << " n1=" << format_number(r.edge_population[1]) << " n2=" << format_number(r.edge_population[2]) << "\n"
        << "convergence: not checked by evolve; run `triphoton converge` with the same config\n";
    for (const std::string& w : r.summary.warnings) out << "warning: " << w << "\n";
    for (int mode = 0; mode < 3; ++mode) {
      if (r.edge_population[mode] > 1e-6) {
        out << "warning: population " << format_number(r.edge_population[mode]) << " at the n" << mode
            << " cutoff; raise trunc" << mode << "\n";
      }
    }
  }
  for (const fs::path& file : info.files) out << "file: " << file.filename().string() << "\n";
}

}  // namespace

EvolveOutputs cmd_evolve(const SimConfig& config, const fs::path& out_dir) {
  validate_run_config(config);
  prepare_directory(out_dir);

  EvolveOutputs outputs;
  outputs.run_id = run_id(config);
  outputs.manifest = out_dir / "manifest.txt";

  ManifestInfo info;
  info.start = wall_clock();
  const auto clock_start = std::chrono::steady_clock::now();
  auto finish = [&] {
    info.end = wall_clock();
    info.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  };

  try {
    outputs.result = simulate(config);
  } catch (const NumericalAbort& e) {
    finish();
    info.status = std::string("aborted: ") + e.what();
    write_manifest(outputs.manifest, config, outputs.run_id, info);
    throw;
  }

  const SimulationResult& result = outputs.result;
  outputs.files.push_back(out_dir / "observables.dat");
  write_observables(outputs.files.back(), outputs.run_id, result);
  for (const Snapshot& snap : result.snapshots) {
    const std::string label = snapshot_label(snap.t_kappa);
    outputs.files.push_back(out_dir / ("snapshot_tk" + label + ".dat"));
    write_snapshot(outputs.files.back(), outputs.run_id, snap.t_kappa, snap.reduced);
    outputs.files.push_back(out_dir / ("distribution_tk" + label + ".dat"));
    write_distribution(outputs.files.back(), outputs.run_id, config.frame, snap);
  }

  finish();
  info.result = &result;
  info.files = outputs.files;
  write_manifest(outputs.manifest, config, outputs.run_id, info);
  return outputs;
}

SnapshotFile read_snapshot(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("snapshot", "cannot read '" + path.string() + "'");
  auto malformed = [&](const std::string& why) {
    return ConfigError("snapshot", path.filename().string() + ": " + why);
  };

  std::map<std::string, std::string> header;
  std::vector<std::string> data;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) header[trim(line.substr(1, colon - 1))] = trim(line.substr(colon + 1));
      continue;
    }
    data.push_back(line);
  }
  for (const char* key : {"run_id", "frame", "t_kappa", "time", "dim"}) {
    if (!header.count(key)) throw malformed(std::string("missing header field '") + key + "'");
  }

  SnapshotFile snap;
  snap.run_id = header["run_id"];
  snap.label = header["t_kappa"];
  long long dim = 0;
  try {
    std::size_t used = 0;
    snap.t_kappa = std::stod(snap.label, &used);
    if (used != snap.label.size()) throw std::invalid_argument("t_kappa");
    snap.reduced.time = std::stod(header["time"]);
    dim = std::stoll(header["dim"], &used);
    if (used != header["dim"].size()) throw std::invalid_argument("dim");
  } catch (const std::exception&) {
    throw malformed("unreadable t_kappa, time or dim");
  }
  if (dim < 1 || dim > 4096) throw malformed("dim out of range");
  if (header["frame"] == "lab") {
    snap.reduced.frame = Frame::lab;
  } else if (header["frame"] == "rotating") {
    snap.reduced.frame = Frame::rotating;
  } else {
    throw malformed("unknown frame '" + header["frame"] + "'");
  }

  snap.reduced.rho = Matrix::Zero(dim, dim);
  std::vector<char> seen(static_cast<std::size_t>(dim * dim), 0);
  for (const std::string& line : data) {
    std::istringstream fields(line);
    long long i = -1, j = -1;
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> i >> j >> re >> im) || (fields >> extra)) throw malformed("bad data line '" + line + "'");
    if (i < 0 || j < 0 || i >= dim || j >= dim) throw malformed("index out of range in '" + line + "'");
    if (!std::isfinite(re) || !std::isfinite(im)) throw malformed("non-finite element");
    char& flag = seen[static_cast<std::size_t>(i * dim + j)];
    if (flag) throw malformed("duplicate element in '" + line + "'");
    flag = 1;
    snap.reduced.rho(i, j) = Complex(re, im);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw malformed("missing matrix elements");
  return snap;
}

WignerOutput cmd_wigner(const fs::path& snapshot, const GridSpec& spec, const fs::path& out_dir) {
  if (spec.n < 2 || !(spec.x_max > 0.0) || !(spec.p_max > 0.0)) throw ConfigError("grid", "need n >= 2 and extents > 0");
  const SnapshotFile snap = read_snapshot(snapshot);
  prepare_directory(out_dir);

  WignerOutput output;
  output.grid = wigner(snap.reduced, spec);
  output.file = out_dir / ("wigner_tk" + snap.label + ".dat");
  const WignerGrid& grid = output.grid;

  std::ofstream out = open_output(output.file);
  out << "# triphoton wigner\n"
      << "# run_id: " << snap.run_id << "\n"
      << "# version: " << version() << "\n"
      << "# source: " << snapshot.filename().string() << "\n"
      << "# mode: omega1\n"
      << "# frame: " << to_string(snap.reduced.frame) << "\n"
      << "# t_kappa: " << snap.label << "\n"
      << "# time: " << format_number(snap.reduced.time) << "\n"
      << "# convention: alpha = (x + i p)/sqrt(2), integral of W dx dp = 1\n"
      << "# grid: x in [-" << format_number(spec.x_max) << ", " << format_number(spec.x_max) << "], p in [-"
      << format_number(spec.p_max) << ", " << format_number(spec.p_max) << "], " << spec.n << " x " << spec.n
      << " points\n"
      << "# integral: " << format_number(grid.integral) << "\n"
      << "# max_imaginary: " << format_number(grid.max_imaginary) << "\n"
      << "# warning: " << grid.warning.value_or("none") << "\n"
      << "# units: x, p dimensionless quadratures, W in 1/(dx dp)\n"
      << "# columns: x p W\n";
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      out << format_number(grid.x(i)) << ' ' << format_number(grid.p(j)) << ' ' << format_number(grid.at(i, j)) << '\n';
    }
    out << '\n';
  }
  return output;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport cmd_validate(const SimConfig& config) {
  validate_run_config(config);
  ValidationReport report;
  auto check = [&](std::string name, double value, double threshold, std::string detail = {}) {
    report.checks.push_back({std::move(name), std::isfinite(value) && value <= threshold, value, threshold,
                             std::move(detail)});
  };
  auto fail = [&](std::string name, double threshold, const std::exception& e) {
    report.checks.push_back({std::move(name), false, std::numeric_limits<double>::quiet_NaN(), threshold, e.what()});
  };

  SimConfig lab = config;
  lab.frame = Frame::lab;

  // Oracle equivalence, lab frame.
  {
    const FockSpace small(Truncation{1, 1, 1});
    const Liouvillian liouvillian(small, lab);
    const oracle::Generator reference = [&](const Matrix& rho) { return liouvillian.apply(rho); };
    const auto sweep = oracle::basis_sweep(small, lab, reference);
    check("oracle_basis_sweep_111", sweep.max_abs_difference, 1e-12, std::to_string(sweep.inputs) + " inputs");

    const auto literal = oracle::basis_sweep(small, lab, reference, oracle::ZetaRaiseFactor::literal);
    std::size_t outside = 0;
    std::string terms;
    for (const auto& [label, size] : literal.suspect_terms) {
      if (label.find("zeta.ket.2") == std::string::npos) ++outside;
      terms += (terms.empty() ? "" : ",") + label;
    }
    check("oracle_literal_factor_localized", literal.suspect_terms.empty() ? 1.0 : static_cast<double>(outside), 0.0,
          "sqrt((l-1)mn) differs by " + format_number(literal.max_abs_difference) + " in " + terms);
  }
  {
    const FockSpace small(Truncation{1, 2, 1});
    const Liouvillian liouvillian(small, lab);
    const auto sweep = oracle::random_sweep(
        small, lab, [&](const Matrix& rho) { return liouvillian.apply(rho); }, 100, 2026);
    check("oracle_random_121", sweep.max_abs_difference, 1e-12, std::to_string(sweep.inputs) + " random Hermitian inputs");
  }

  const FockSpace space(config.truncation);
  const Liouvillian liouvillian(space, config);
  {
    const Matrix h = Matrix(liouvillian.hamiltonian().matrix);
    check("hamiltonian_hermitian", (h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    const Matrix q = Matrix(charge_operator(space).matrix);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff() * q.cwiseAbs().maxCoeff());
    check("hamiltonian_conserves_charge", (h * q - q * h).cwiseAbs().maxCoeff() / scale, 1e-14, "relative to max|H| max|Q|");
  }
  {
    const Matrix rho = oracle::random_hermitian(static_cast<Index>(space.dim()), 7);
    const Matrix out = liouvillian.apply(rho);
    const double scale = std::max(1.0, out.cwiseAbs().maxCoeff());
    check("liouvillian_trace_preserving", std::abs(out.trace()) / scale, 1e-12, "relative to max|L(rho)|");
    check("liouvillian_hermiticity_preserving", (out - out.adjoint()).cwiseAbs().maxCoeff() / scale, 1e-12,
          "relative to max|L(rho)|");
    BlockedState blocked_out;
    liouvillian.apply_blocked(liouvillian.block(rho), blocked_out);
    check("blocked_matches_dense", (liouvillian.unblock(blocked_out) - out).cwiseAbs().maxCoeff() / scale, 1e-12,
          "relative to max|L(rho)|");
  }

  // Analytic Jaynes-Cummings oscillation over one period.
  try {
    SimConfig jc = config;
    jc.zeta_mev = jc.xi_mev = jc.kappa_mev = jc.pump_mev = 0.0;
    jc.omega_qd_mev = jc.omega0_mev;
    jc.frame = Frame::rotating;
    const FockSpace jc_space(Truncation{1, 0, 0});
    const Liouvillian jc_l(jc_space, jc);
    const double period = jc.g_mev > 0.0 ? M_PI / jc.g_mev : 1.0;
    const std::array<double, 1> stops{period};
    EvolveOptions options{period, aligned_time_step(0.01 / std::max(jc.g_mev, 1e-300), stops), 1, {}, false};
    double worst = 0.0;
    const std::size_t excited = jc_space.index(BasisState{DotLevel::excited, 0, 0, 0});
    evolve(initial_state(jc_space, "e,0,0,0"), jc_l, options, [&](const RecordPoint& point) {
      const double expected = std::pow(std::cos(jc.g_mev * point.state.time), 2);
      worst = std::max(worst, std::abs(point.state.rho(excited, excited).real() - expected));
    });
    check("jc_rabi_cos2", worst, 1e-6, "one period pi/g");
  } catch (const std::exception& e) {
    fail("jc_rabi_cos2", 1e-6, e);
  }

  // Dynamics over a short horizon.
  const DensityMatrix rho0 = initial_state(space, config.initial_state, config.frame);
  double dt = 0.0;
  std::size_t horizon_steps = 0;
  try {
    dt = resolve_time_step(config, liouvillian);
    horizon_steps = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(kValidateHorizonKappa / config.kappa_mev / dt)));
  } catch (const std::exception& e) {
    fail("time_step", 0.0, e);
    return report;
  }
  const double horizon = static_cast<double>(horizon_steps) * dt;
  const std::string horizon_text = "t*kappa = " + format_number(horizon * config.kappa_mev);

  try {
    const auto conv = step_convergence(rho0, liouvillian, horizon, dt);
    check("step_convergence", conv.max_abs_difference, 1e-8,
          "max|rho(dt) - rho(dt/2)| at " + horizon_text + ", dt = " + format_number(dt));
  } catch (const std::exception& e) {
    fail("step_convergence", 1e-8, e);
  }

  try {
    double trace_error = 0.0, herm = 0.0, lowest = std::numeric_limits<double>::infinity(), off = 0.0;
    const Complex trace0 = rho0.trace();
    EvolveOptions options{horizon, dt, 1, {}, true};
    evolve(rho0, liouvillian, options, [&](const RecordPoint& point) {
      trace_error = std::max(trace_error, std::abs(point.state.trace() - trace0));
      herm = std::max(herm, point.raw_hermiticity_error);
      lowest = std::min(lowest, point.min_eigenvalue);
      off = std::max(off, off_sector_population(point.state));
    });
    check("trace_preserved", trace_error, 1e-9, horizon_text);
    check("hermiticity_preserved", herm, 1e-10, horizon_text);
    check("positivity", -lowest, 1e-8, "value is minus the smallest eigenvalue");
    const bool starts_in_sector = off_sector_population(rho0) == 0.0;
    check("selection_rule", starts_in_sector ? off : 0.0, 1e-12,
          starts_in_sector ? "population with Q mod 3 != 0" : "skipped: initial state has Q mod 3 != 0");
  } catch (const std::exception& e) {
    fail("trace_preserved", 1e-9, e);
  }

  try {
    SimConfig other = config;
    other.frame = config.frame == Frame::lab ? Frame::rotating : Frame::lab;
    const Liouvillian other_l(space, other);
    const double max_h = std::max(liouvillian.hamiltonian_max_abs(), other_l.hamiltonian_max_abs());
    const std::array<double, 1> stops{horizon};
    const double fine_dt = std::min(dt, aligned_time_step(0.095 / max_h, stops));
    auto final_distribution = [&](const Liouvillian& l, Frame frame) {
      std::vector<double> p;
      EvolveOptions options{horizon, fine_dt, std::numeric_limits<std::size_t>::max(), {}, false};
      evolve(initial_state(space, config.initial_state, frame), l, options,
             [&](const RecordPoint& point) { p = photon_distribution(reduce_to_mode1(point.state)); });
      return p;
    };
    const double diff = max_padded_difference(final_distribution(liouvillian, config.frame),
                                              final_distribution(other_l, other.frame));
    check("frame_independence", diff, 1e-8, "max|p_lab(n1) - p_rot(n1)| at " + horizon_text);
  } catch (const std::exception& e) {
    fail("frame_independence", 1e-8, e);
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  out << "# status\tcheck\tvalue\tthreshold\tdetail\n";
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << '\t' << c.name << '\t' << format_number(c.value) << '\t'
        << format_number(c.threshold) << '\t' << c.detail << '\n';
  }
  out << "# overall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

bool ConvergenceReport::converged() const {
  return std::all_of(entries.begin(), entries.end(), [](const ConvergenceEntry& e) { return e.converged; });
}

ConvergenceReport cmd_converge(const SimConfig& config, double tolerance) {
  validate_run_config(config);
  ConvergenceReport report;
  report.tolerance = tolerance;
  {
    const FockSpace space(config.truncation);
    const Liouvillian liouvillian(space, config);
    report.dt = resolve_time_step(config, liouvillian);
  }

  SimConfig base = config;
  base.dt = report.dt;
  const double last = *std::max_element(config.snapshots_kappa.begin(), config.snapshots_kappa.end());
  if (last > 0.0) base.t_final_kappa = last;
  base.record_stride = std::numeric_limits<std::size_t>::max();
  const SimulationResult reference = simulate(base);

  std::vector<std::pair<std::string, SimConfig>> variants;
  for (int mode = 0; mode < 3; ++mode) {
    SimConfig v = base;
    int& cutoff = mode == 0 ? v.truncation.n0 : mode == 1 ? v.truncation.n1 : v.truncation.n2;
    ++cutoff;
    variants.emplace_back("trunc" + std::to_string(mode) + "+1", v);
  }
  SimConfig half = base;
  half.dt = 0.5 * base.dt;
  variants.emplace_back("dt/2", half);

  for (const auto& [name, variant] : variants) {
    const SimulationResult run = simulate(variant);
    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
      const double change = max_padded_difference(run.snapshots[k].distribution, reference.snapshots[k].distribution);
      report.entries.push_back({name, config.snapshots_kappa[k], change, change < tolerance});
    }
  }
  return report;
}

std::string format_report(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "# dt: " << format_number(report.dt) << " hbar/meV, tolerance: " << format_number(report.tolerance) << '\n'
      << "# variant\tt_kappa\tmax_change_p_n1\tstatus\n";
  for (const ConvergenceEntry& e : report.entries) {
    out << e.variant << '\t' << format_number(e.t_kappa) << '\t' << format_number(e.max_change) << '\t'
        << (e.converged ? "ok" : "NOT_CONVERGED") << '\n';
  }
  out << "# overall: " << (report.converged() ? "converged" : "NOT_CONVERGED") << '\n';
  return out.str();
}

}  // namespace triphoton

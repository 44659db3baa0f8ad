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

// triphoton command line: evolve, wigner, validate, converge.
//
// Exit codes: 0 success, 1 validation or convergence failure, 2 configuration error,
// 3 numerical abort.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triphoton/commands.hpp"
#include "triphoton/config_io.hpp"

namespace fs = std::filesystem;
using namespace triphoton;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;

struct ConfigArgs {
  std::string path;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", path, "key = value config file");
    cmd->add_option("-s,--set", overrides, "override, key=value (repeatable)")->allow_extra_args(false);
  }

  SimConfig load() const {
    return parse_config(path.empty() ? std::nullopt : std::optional<fs::path>(path), overrides);
  }
};

int run_evolve(const ConfigArgs& args, const fs::path& out) {
  const SimConfig config = args.load();
  std::cout << "ratios: " << describe_ratios(config) << "\n" << std::flush;
  const EvolveOutputs result = cmd_evolve(config, out);
  std::cout << "run_id: " << result.run_id << "\n"
            << "dt: " << format_number(result.result.dt) << " hbar/meV, steps: " << result.result.summary.steps
            << "\n";
  for (const auto& w : result.result.summary.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
  std::cout << "wrote " << result.manifest.string() << "\n";
  return 0;
}

int run_wigner(const std::vector<std::string>& snapshots, const GridSpec& spec, const std::string& out) {
  for (const std::string& snapshot : snapshots) {
    const fs::path dir = out.empty() ? fs::path(snapshot).parent_path() : fs::path(out);
    const WignerOutput result = cmd_wigner(snapshot, spec, dir.empty() ? fs::path(".") : dir);
    std::cout << "wrote " << result.file.string() << " (integral " << format_number(result.grid.integral) << ")\n";
    if (result.grid.warning) std::cout << "warning: " << *result.grid.warning << "\n";
  }
  return 0;
}

int run_validate(const ConfigArgs& args) {
  const ValidationReport report = cmd_validate(args.load());
  std::cout << format_report(report);
  return report.passed() ? 0 : kExitFailure;
}

int run_converge(const ConfigArgs& args, double tolerance) {
  const SimConfig config = args.load();
  std::cout << "# ratios: " << describe_ratios(config) << "\n";
  const ConvergenceReport report = cmd_converge(config, tolerance);
  std::cout << format_report(report);
  return report.converged() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum dot, cavity and cascaded down-conversion master-equation simulator"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  ConfigArgs evolve_args, validate_args, converge_args;
  std::string evolve_out = "out";
  auto* evolve = app.add_subcommand("evolve", "integrate the master equation and write observables and snapshots");
  evolve_args.attach(evolve);
  evolve->add_option("-o,--out", evolve_out, "output directory")->capture_default_str();

  std::vector<std::string> snapshots;
  GridSpec grid;
  double grid_max = grid.x_max;
  std::string wigner_out;
  auto* wigner_cmd = app.add_subcommand("wigner", "Wigner function of reduced-state snapshot files");
  wigner_cmd->add_option("snapshot", snapshots, "snapshot_tk*.dat files written by evolve")->required();
  wigner_cmd->add_option("--grid-max", grid_max, "half width of the square x, p grid")->capture_default_str();
  wigner_cmd->add_option("--grid-n", grid.n, "points per axis")->capture_default_str();
  wigner_cmd->add_option("-o,--out", wigner_out, "output directory (default: next to each snapshot)");

  auto* validate = app.add_subcommand("validate", "oracle equivalence and invariant checks");
  validate_args.attach(validate);

  double tolerance = 1e-6;
  auto* converge = app.add_subcommand("converge", "truncation + 1 and dt / 2 convergence scan");
  converge_args.attach(converge);
  converge->add_option("--tolerance", tolerance, "largest acceptable change in p(n1)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*evolve) return run_evolve(evolve_args, evolve_out);
    if (*wigner_cmd) {
      grid.x_max = grid.p_max = grid_max;
      return run_wigner(snapshots, grid, wigner_out);
    }
    if (*validate) return run_validate(validate_args);
    if (*converge) return run_converge(converge_args, tolerance);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

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

#include <array>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triphoton/analysis.hpp"
#include "triphoton/integrator.hpp"

namespace triphoton {
namespace {

using testing::excited;
using testing::ground;
using testing::max_abs;

double auto_dt(const Liouvillian& l, double t_final) {
  const std::array<double, 1> stops{t_final};
  return default_time_step(l, stops);
}

TEST(InitialState, Examples) {
  const FockSpace space(Truncation{});
  const DensityMatrix rho = initial_state(space, "e,0,0,0");
  EXPECT_EQ(rho.trace(), Complex(1.0));
  EXPECT_EQ(rho.purity(), 1.0);
  EXPECT_EQ(mode_observables(rho).excited, 1.0);
  EXPECT_EQ(rho.rho(200, 200), Complex(1.0));

  EXPECT_EQ(mode_observables(initial_state(space, "|g,0,0,0>")).excited, 0.0);

  const DensityMatrix mixed = initial_state(space, "0.5*g,0,0,0 + 0.5*e,0,0,0");
  EXPECT_DOUBLE_EQ(mixed.purity(), 0.5);
  EXPECT_EQ(mixed.trace(), Complex(1.0));
}

TEST(InitialState, Errors) {
  const FockSpace space(Truncation{1, 1, 1});
  EXPECT_THROW(initial_state(space, "e,0,5,0"), ConfigError);
  EXPECT_THROW(initial_state(space, "x,0,0,0"), ConfigError);
  EXPECT_THROW(initial_state(space, "e,0,0"), ConfigError);
  EXPECT_THROW(initial_state(space, "0.4*g,0,0,0 + 0.4*e,0,0,0"), ConfigError);
  EXPECT_THROW(initial_state(space, "-0.5*g,0,0,0 + 1.5*e,0,0,0"), ConfigError);
  EXPECT_THROW(initial_state(space, ""), ConfigError);
}

TEST(InitialState, SpecRoundTrip) {
  const auto spec = InitialStateSpec::parse("0.25*g,1,0,0 + 0.75*e,0,1,1");
  ASSERT_EQ(spec.components.size(), 2u);
  const auto again = InitialStateSpec::parse(spec.to_string());
  ASSERT_EQ(again.components.size(), 2u);
  EXPECT_EQ(again.components[1].weight, 0.75);
  EXPECT_EQ(again.components[1].state, excited(0, 1, 1));
}

TEST(Evolve, JaynesCummingsRabiOscillation) {
  SimConfig config;
  config.zeta_mev = config.xi_mev = config.kappa_mev = config.pump_mev = 0.0;
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, config);
  const double period = M_PI / config.g_mev;
  const EvolveOptions options{period, auto_dt(l, period), 1, {}, true};
  double worst = 0.0;
  const auto e = static_cast<Index>(space.index(excited(0, 0, 0)));
  const auto summary = evolve(initial_state(space, "e,0,0,0"), l, options, [&](const RecordPoint& p) {
    worst = std::max(worst, std::abs(p.state.rho(e, e).real() - std::pow(std::cos(config.g_mev * p.state.time), 2)));
  });
  EXPECT_LT(worst, 1e-6);
  EXPECT_GT(summary.steps, 10u);
}

TEST(Evolve, CavityDecay) {
  SimConfig config;
  config.g_mev = config.zeta_mev = config.xi_mev = config.pump_mev = 0.0;
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, config);
  const double t_final = 1.0 / config.kappa_mev;
  const EvolveOptions options{t_final, auto_dt(l, t_final), 1, {}, true};
  double worst = 0.0;
  evolve(initial_state(space, "g,1,0,0"), l, options, [&](const RecordPoint& p) {
    worst = std::max(worst, std::abs(mode_observables(p.state).n0 - std::exp(-config.kappa_mev * p.state.time)));
  });
  EXPECT_LT(worst, 1e-8);
}

TEST(Evolve, ClosedSystemConservesPurityAndEnergy) {
  SimConfig config;
  config.kappa_mev = config.pump_mev = 0.0;
  config.omega_qd_mev = 502.0;
  const FockSpace space(Truncation{1, 3, 1});
  const Liouvillian l(space, config);
  const Matrix h = Matrix(l.hamiltonian().matrix);
  const double t_final = 2.0;
  const EvolveOptions options{t_final, auto_dt(l, t_final), 5, {}, false};
  double purity_error = 0.0, energy_error = 0.0;
  const double e0 = 2.0;
  evolve(initial_state(space, "e,0,0,0"), l, options, [&](const RecordPoint& p) {
    purity_error = std::max(purity_error, std::abs(p.state.purity() - 1.0));
    energy_error = std::max(energy_error, std::abs((p.state.rho * h).trace().real() - e0));
  });
  EXPECT_LT(purity_error, 1e-8);
  EXPECT_LT(energy_error, 1e-8);
}

TEST(Evolve, SelectionRule) {
  const FockSpace space(Truncation{});
  const Liouvillian l(space, SimConfig{});
  const double t_final = 0.5;
  const EvolveOptions options{t_final, auto_dt(l, t_final), 50, {}, true};
  double worst = 0.0;
  const auto summary = evolve(initial_state(space, "e,0,0,0"), l, options,
                              [&](const RecordPoint& p) { worst = std::max(worst, off_sector_population(p.state)); });
  EXPECT_EQ(worst, 0.0);
  EXPECT_LT(summary.max_trace_drift, 1e-9);
  EXPECT_LT(summary.max_raw_hermiticity_error, 1e-10);
  EXPECT_GE(summary.min_eigenvalue, -1e-8);
  EXPECT_TRUE(summary.warnings.empty());
}

TEST(Evolve, StrideIndependence) {
  const FockSpace space(Truncation{1, 2, 1});
  const Liouvillian l(space, SimConfig{});
  const double t_final = 0.3;
  const double dt = auto_dt(l, t_final);
  Trajectory every = evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{t_final, dt, 1, {}, false});
  Trajectory sparse = evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{t_final, dt, 7, {}, false});
  ASSERT_GT(sparse.steps.size(), 2u);
  for (std::size_t k = 0; k < sparse.steps.size(); ++k) {
    const std::size_t step = sparse.steps[k];
    ASSERT_EQ(every.steps[step], step);
    EXPECT_EQ(max_abs(every.states[step].rho - sparse.states[k].rho), 0.0);
  }
  EXPECT_EQ(sparse.steps.back(), every.steps.back());
}

TEST(Evolve, RecordsCheckpointsAndFinalStep) {
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, SimConfig{});
  const double dt = 0.01;
  const Trajectory t = evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{0.95, dt, 20, {0.33, 0.07}, false});
  std::vector<std::size_t> expected{0, 7, 20, 33, 40, 60, 80, 95};
  EXPECT_EQ(t.steps, expected);
  for (std::size_t k = 1; k < t.states.size(); ++k) EXPECT_GT(t.states[k].time, t.states[k - 1].time);
  EXPECT_THROW(evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{0.955, dt, 1, {}, false}),
               std::invalid_argument);
  EXPECT_THROW(evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{0.5, dt, 1, {0.6}, false}),
               std::invalid_argument);
}

TEST(Evolve, DtGuard) {
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, SimConfig{});
  const double too_big = 0.11 / l.hamiltonian_max_abs();
  try {
    evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{too_big * 10, too_big, 1, {}, false});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "dt");
  }
  EXPECT_THROW(evolve(initial_state(space, "e,0,0,0"), l, EvolveOptions{1.0, 0.0, 1, {}, false}), ConfigError);
}

TEST(Evolve, NonFiniteStateAborts) {
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, SimConfig{});
  DensityMatrix rho = initial_state(space, "e,0,0,0");
  rho.rho(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    evolve(rho, l, EvolveOptions{0.1, 0.01, 1, {}, false});
    FAIL() << "expected NumericalAbort";
  } catch (const NumericalAbort& e) {
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(StepConvergence, FourthOrderRichardsonRatio) {
  const FockSpace space(Truncation{1, 1, 1});
  SimConfig config;
  config.kappa_mev = 1.0;
  config.pump_mev = 0.5;
  const Liouvillian l(space, config);
  const DensityMatrix rho0 = initial_state(space, "e,0,0,0");
  const double t_final = 0.64;
  const double dt = 0.02;
  const double coarse = step_convergence(rho0, l, t_final, dt).max_abs_difference;
  const double fine = step_convergence(rho0, l, t_final, dt / 2).max_abs_difference;
  ASSERT_GT(fine, 1e-13);
  EXPECT_NEAR(fine / coarse, 1.0 / 16.0, 0.01);
}

TEST(StepConvergence, DefaultConfigShortHorizon) {
  const FockSpace space(Truncation{});
  const Liouvillian l(space, SimConfig{});
  const double dt = auto_dt(l, 0.2);
  EXPECT_LT(step_convergence(initial_state(space, "e,0,0,0"), l, 0.2, dt).max_abs_difference, 1e-8);
}

TEST(StepConvergence, ZeroGeneratorGivesExactlyZero) {
  SimConfig config;
  config.g_mev = config.zeta_mev = config.xi_mev = config.kappa_mev = config.pump_mev = 0.0;
  const FockSpace space(Truncation{1, 1, 1});
  const Liouvillian l(space, config);
  const DensityMatrix rho0 = initial_state(space, "0.3*g,0,1,0 + 0.7*e,1,0,1");
  EXPECT_EQ(step_convergence(rho0, l, 1.0, 0.1).max_abs_difference, 0.0);
  const Trajectory t = evolve(rho0, l, EvolveOptions{1.0, 0.1, 1, {}, true});
  EXPECT_EQ(max_abs(t.states.back().rho - rho0.rho), 0.0);
}

TEST(TimeGrid, StepsTo) {
  EXPECT_EQ(steps_to(2.16, 0.01), 216u);
  EXPECT_EQ(steps_to(0.0, 0.01), 0u);
  EXPECT_THROW(steps_to(2.165, 0.01), std::invalid_argument);
  EXPECT_THROW(steps_to(-1.0, 0.01), std::invalid_argument);
}

TEST(TimeGrid, AlignedTimeStep) {
  const std::array<double, 4> stops{0.0, 2.16, 3.28, 5.0};
  const double dt = aligned_time_step(2.4e-4, stops);
  EXPECT_LE(dt, 2.4e-4);
  EXPECT_GT(dt, 2.0e-4);
  for (double t : stops) EXPECT_NO_THROW(steps_to(t, dt));
}

TEST(TimeGrid, DefaultStepIncludesDissipation) {
  SimConfig config;
  config.g_mev = config.zeta_mev = config.xi_mev = 0.0;
  config.kappa_mev = 2.0;
  const FockSpace space(Truncation{2, 0, 0});
  const Liouvillian l(space, config);
  EXPECT_LE(auto_dt(l, 1.0) * 4.0, 0.02 + 1e-15);
}

}  // namespace
}  // namespace triphoton

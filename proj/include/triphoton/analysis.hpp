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

#include <optional>
#include <string>
#include <vector>

#include "triphoton/integrator.hpp"

namespace triphoton {

/// Density matrix of the omega1 mode alone, (trunc1 + 1) square.
struct ReducedState {
  Matrix rho;
  double time = 0.0;
  Frame frame = Frame::rotating;
};

/// rho1_{ij} = sum_{a, n0, n2} <a, n0, i, n2| rho |a, n0, j, n2>.
ReducedState reduce_to_mode1(const DensityMatrix& state);

/// p(n) = Re rho1_{nn}.
std::vector<double> photon_distribution(const ReducedState& reduced);

struct ModeObservables {
  double n0 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double excited = 0.0;
  double purity = 0.0;
  // Largest |Im| among the expectation values above.
  double max_imaginary = 0.0;
};

ModeObservables mode_observables(const DensityMatrix& state);

/// Total population of basis states with Q mod 3 != 0.
double off_sector_population(const DensityMatrix& state);

struct GridSpec {
  double x_max = 6.0;
  double p_max = 6.0;
  int n = 201;
};

/// W(x, p) sampled on a uniform n x n grid, x and p in [-max, max].
///
/// Convention: alpha = (x + i p)/sqrt(2), normalized so that the integral over dx dp is 1,
/// which gives W = 1/pi at the origin for the vacuum.
struct WignerGrid {
  GridSpec spec;
  // values[i * n + j] = W(x_i, p_j)
  std::vector<double> values;
  double integral = 0.0;
  double max_imaginary = 0.0;
  std::optional<std::string> warning;

  double x(int i) const;
  double p(int j) const;
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.n + j]; }
};

/// W(alpha) = (1/pi) Tr[rho D(alpha) P D(alpha)^dag] with parity P = (-1)^n. Evaluated
/// exactly through D(alpha) P D(alpha)^dag = D(2 alpha) P and the normal-ordered matrix
/// elements of D restricted to the reduced space.
double wigner_at(const ReducedState& reduced, double x, double p, double* imaginary = nullptr);

/// Throws std::invalid_argument for n < 2 or non-positive extents. A grid too small for the
/// state's photon distribution sets `warning` instead of failing.
WignerGrid wigner(const ReducedState& reduced, const GridSpec& spec = {});

/// Largest photon number whose Wigner function fits inside the grid, (L^2 - 5)/2 for
/// half-width L = min(x_max, p_max).
int wigner_grid_reach(const GridSpec& spec);

}  // namespace triphoton

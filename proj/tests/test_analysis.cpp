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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "test_util.hpp"
#include "triphoton/analysis.hpp"
#include "triphoton/oracle.hpp"

namespace triphoton {
namespace {

using testing::excited;
using testing::ground;
using testing::ket;
using testing::max_abs;

constexpr double kPi = std::numbers::pi;

DensityMatrix pure(const FockSpace& space, const Matrix& psi) {
  return DensityMatrix{space, psi * psi.adjoint(), 0.0, Frame::rotating};
}

ReducedState fock(int n, int levels) {
  ReducedState r{Matrix::Zero(levels, levels), 0.0, Frame::rotating};
  r.rho(n, n) = 1.0;
  return r;
}

// Random valid density matrix A A^dag / Tr.
Matrix random_density(Index dim, std::uint64_t seed) {
  const Matrix a = oracle::random_hermitian(dim, seed) + kI * oracle::random_hermitian(dim, seed + 77);
  const Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// Fock-state closed form, independent of the displaced-parity evaluation.
double fock_wigner(int n, double x, double p) {
  const double r2 = x * x + p * p;
  return (n % 2 == 0 ? 1.0 : -1.0) / kPi * std::exp(-r2) * std::laguerre(static_cast<unsigned>(n), 2.0 * r2);
}

// Tr[rho D(alpha) P D(alpha)^dag] / pi with D from a matrix exponential on a padded space.
double padded_expm_wigner(const Matrix& rho, double x, double p, Index pad) {
  const Index levels = rho.rows() + pad;
  Matrix a = Matrix::Zero(levels, levels);
  for (Index n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Complex alpha = Complex(x, p) / std::sqrt(2.0);
  const Matrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  const Matrix d = generator.exp();
  Matrix parity = Matrix::Zero(levels, levels);
  for (Index n = 0; n < levels; ++n) parity(n, n) = n % 2 == 0 ? 1.0 : -1.0;
  Matrix big = Matrix::Zero(levels, levels);
  big.topLeftCorner(rho.rows(), rho.cols()) = rho;
  return ((big * d * parity * d.adjoint()).trace() / kPi).real();
}

TEST(Reduce, ProductState) {
  const FockSpace space(Truncation{1, 3, 1});
  const ReducedState r = reduce_to_mode1(pure(space, ket(space, ground(0, 2, 0))));
  EXPECT_EQ(r.rho.rows(), 4);
  EXPECT_EQ(max_abs(r.rho - fock(2, 4).rho), 0.0);
}

TEST(Reduce, EntangledBranchesLoseCoherence) {
  const FockSpace space(Truncation{1, 3, 1});
  const Matrix psi = (ket(space, ground(0, 0, 0)) + ket(space, ground(0, 3, 1))) / std::sqrt(2.0);
  const ReducedState r = reduce_to_mode1(pure(space, psi));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(max_abs(r.rho - expected), 1e-15);
}

TEST(Reduce, CoherenceSurvivesWhenEnvironmentMatches) {
  const FockSpace space(Truncation{1, 3, 1});
  const Matrix psi = (ket(space, excited(1, 0, 1)) + ket(space, excited(1, 3, 1))) / std::sqrt(2.0);
  const ReducedState r = reduce_to_mode1(pure(space, psi));
  EXPECT_NEAR(r.rho(0, 3).real(), 0.5, 1e-15);
}

TEST(Reduce, LinearAndTracePreserving) {
  const FockSpace space(Truncation{2, 3, 2});
  const auto dim = static_cast<Index>(space.dim());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix a = oracle::random_hermitian(dim, seed), b = oracle::random_hermitian(dim, seed + 100);
    const ReducedState ra = reduce_to_mode1({space, a, 0.0, Frame::rotating});
    const ReducedState rb = reduce_to_mode1({space, b, 0.0, Frame::rotating});
    const ReducedState rab = reduce_to_mode1({space, 2.0 * a - kI * b, 0.0, Frame::rotating});
    EXPECT_LT(std::abs(ra.rho.trace() - a.trace()), 1e-12);
    EXPECT_LT(max_abs(rab.rho - (2.0 * ra.rho - kI * rb.rho)), 1e-12);
  }
}

TEST(Distribution, Examples) {
  EXPECT_EQ(photon_distribution(fock(0, 5)), (std::vector<double>{1, 0, 0, 0, 0}));
  EXPECT_EQ(photon_distribution(fock(3, 5))[3], 1.0);
  const FockSpace space(Truncation{2, 3, 2});
  const ReducedState r = reduce_to_mode1({space, random_density(static_cast<Index>(space.dim()), 3), 0.0, Frame::rotating});
  double total = 0.0;
  for (double p : photon_distribution(r)) total += p;
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Observables, Examples) {
  const FockSpace space(Truncation{1, 2, 3});
  const ModeObservables e = mode_observables(pure(space, ket(space, excited(0, 0, 0))));
  EXPECT_EQ(e.n0, 0.0);
  EXPECT_EQ(e.n1, 0.0);
  EXPECT_EQ(e.n2, 0.0);
  EXPECT_EQ(e.excited, 1.0);
  EXPECT_EQ(e.purity, 1.0);
  const ModeObservables g = mode_observables(pure(space, ket(space, ground(1, 2, 3))));
  EXPECT_EQ(g.n0, 1.0);
  EXPECT_EQ(g.n1, 2.0);
  EXPECT_EQ(g.n2, 3.0);
  EXPECT_EQ(g.excited, 0.0);
  EXPECT_EQ(g.purity, 1.0);

  const FockSpace small(Truncation{1, 1, 1});
  const Matrix mixed = Matrix::Identity(16, 16) / 16.0;
  EXPECT_DOUBLE_EQ(mode_observables({small, mixed, 0.0, Frame::rotating}).purity, 1.0 / 16.0);

  const ModeObservables r = mode_observables({space, random_density(static_cast<Index>(space.dim()), 8), 0.0, Frame::rotating});
  EXPECT_LT(r.max_imaginary, 1e-10);
  EXPECT_GT(r.purity, 0.0);
  EXPECT_LE(r.purity, 1.0 + 1e-9);
}

TEST(OffSector, CountsOnlyForbiddenCharges) {
  const FockSpace space(Truncation{1, 3, 1});
  EXPECT_EQ(off_sector_population(pure(space, ket(space, ground(0, 3, 0)))), 0.0);
  EXPECT_EQ(off_sector_population(pure(space, ket(space, ground(0, 1, 0)))), 1.0);
}

TEST(Wigner, VacuumAndOnePhotonAtOrigin) {
  EXPECT_NEAR(wigner_at(fock(0, 10), 0.0, 0.0), 1.0 / kPi, 1e-6);
  EXPECT_NEAR(wigner_at(fock(1, 10), 0.0, 0.0), -1.0 / kPi, 1e-6);
  EXPECT_NEAR(wigner_at(fock(3, 10), 0.0, 0.0), -1.0 / kPi, 1e-6);
}

TEST(Wigner, FockThreeMatchesLaguerre) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  const ReducedState three = fock(3, 10);
  for (int k = 0; k < 50; ++k) {
    const double x = coord(rng), p = coord(rng);
    EXPECT_NEAR(wigner_at(three, x, p), fock_wigner(3, x, p), 1e-6) << x << ", " << p;
  }
  for (int n : {0, 1, 2, 5, 9}) {
    EXPECT_NEAR(wigner_at(fock(n, 10), 1.3, -0.4), fock_wigner(n, 1.3, -0.4), 1e-12) << n;
  }
}

TEST(Wigner, MatchesPaddedMatrixExponential) {
  const Matrix rho = random_density(6, 21);
  const ReducedState state{rho, 0.0, Frame::rotating};
  for (auto [x, p] : {std::pair{0.0, 0.0}, std::pair{0.7, -1.1}, std::pair{-1.5, 0.4}, std::pair{2.0, 1.0}}) {
    EXPECT_NEAR(wigner_at(state, x, p), padded_expm_wigner(rho, x, p, 40), 1e-9) << x << ", " << p;
  }
}

TEST(Wigner, GridIntegralAndBounds) {
  const WignerGrid grid = wigner(fock(3, 10));
  EXPECT_EQ(grid.values.size(), 201u * 201u);
  EXPECT_NEAR(grid.integral, 1.0, 5e-3);
  EXPECT_FALSE(grid.warning.has_value());
  EXPECT_DOUBLE_EQ(grid.x(0), -6.0);
  EXPECT_DOUBLE_EQ(grid.p(200), 6.0);
  EXPECT_NEAR(grid.at(100, 100), -1.0 / kPi, 1e-12);
}

TEST(Wigner, RealAndBoundedForRandomStates) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ReducedState state{random_density(10, seed), 0.0, Frame::rotating};
    const WignerGrid grid = wigner(state, GridSpec{4.0, 4.0, 41});
    EXPECT_LT(grid.max_imaginary, 1e-10);
    for (double w : grid.values) EXPECT_LE(std::abs(w), 2.0 / kPi + 1e-9);
  }
}

TEST(Wigner, RotationalCovarianceForDiagonalStates) {
  ReducedState state{Matrix::Zero(10, 10), 0.0, Frame::rotating};
  state.rho(0, 0) = 0.5;
  state.rho(3, 3) = 0.3;
  state.rho(6, 6) = 0.2;
  for (double r : {0.5, 1.2, 2.5}) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 24; ++k) {
      const double phi = 2.0 * kPi * k / 24.0;
      const double w = wigner_at(state, r * std::cos(phi), r * std::sin(phi));
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    EXPECT_LT(hi - lo, 1e-8) << r;
  }
}

TEST(Wigner, SmallGridWarns) {
  EXPECT_EQ(wigner_grid_reach(GridSpec{}), 15);
  const WignerGrid grid = wigner(fock(9, 10), GridSpec{3.0, 3.0, 31});
  ASSERT_TRUE(grid.warning.has_value());
  EXPECT_NE(grid.warning->find("photon number"), std::string::npos);
  EXPECT_THROW(wigner(fock(0, 2), GridSpec{6.0, 6.0, 1}), std::invalid_argument);
  EXPECT_THROW(wigner(fock(0, 2), GridSpec{0.0, 6.0, 11}), std::invalid_argument);
}

}  // namespace
}  // namespace triphoton

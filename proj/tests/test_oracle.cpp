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

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triphoton/dynamics.hpp"
#include "triphoton/oracle.hpp"

namespace triphoton {
namespace {

using testing::excited;
using testing::ground;
using testing::max_abs;
using testing::outer;

SimConfig lab_config() {
  SimConfig c;
  c.frame = Frame::lab;
  return c;
}

oracle::Generator operator_route(const Liouvillian& l) {
  return [&l](const Matrix& rho) { return l.apply(rho); };
}

TEST(Oracle, PumpOnGroundStateMatchesOperatorRoute) {
  const FockSpace space(Truncation{1, 1, 1});
  SimConfig config = lab_config();
  config.g_mev = config.zeta_mev = config.xi_mev = config.kappa_mev = 0.0;
  const BasisState g0 = ground(0, 0, 0), e0 = excited(0, 0, 0);
  const Matrix out = oracle::elementwise_derivative(outer(space, g0, g0), config, space);
  const Matrix expected = config.pump_mev * (outer(space, e0, e0) - outer(space, g0, g0));
  EXPECT_EQ(max_abs(out - expected), 0.0);
  EXPECT_LT(max_abs(out - Liouvillian(space, config).apply(outer(space, g0, g0))), 1e-18);

  // Only the two pump terms contribute.
  for (const auto& term : oracle::elementwise_terms(outer(space, g0, g0), config, space)) {
    const bool pump = term.label == "gg.diag.pump" || term.label == "ee.pump.feed";
    EXPECT_EQ(max_abs(term.values) > 0.0, pump) << term.label;
  }
}

TEST(Oracle, DegeneratePhase) {
  const FockSpace space(Truncation{1, 1, 1});
  SimConfig config = lab_config();
  config.g_mev = config.zeta_mev = config.xi_mev = config.kappa_mev = config.pump_mev = 0.0;
  // omega0 (0 - 1 + 1/3 + 2/3) = 0, up to rounding of the thirds
  const Matrix flat = oracle::elementwise_derivative(outer(space, ground(1, 0, 0), ground(0, 1, 1)), config, space);
  EXPECT_LT(max_abs(flat), 1e-13);
  // omega0 (0 - 1) on (g,1,0,0; g,0,0,0)
  const Matrix rho = outer(space, ground(1, 0, 0), ground(0, 0, 0));
  const Matrix out = oracle::elementwise_derivative(rho, config, space);
  EXPECT_LT(max_abs(out - (-kI * config.omega0_mev) * rho), 1e-12);
}

TEST(Oracle, RejectsRotatingFrame) {
  const FockSpace space(Truncation{1, 1, 1});
  try {
    oracle::elementwise_derivative(Matrix::Zero(16, 16), SimConfig{}, space);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "frame");
  }
}

TEST(Oracle, BasisSweepAgreesWithOperatorRoute) {
  const FockSpace space(Truncation{1, 1, 1});
  for (double omega_qd : {500.0, 498.5}) {
    SimConfig config = lab_config();
    config.omega_qd_mev = omega_qd;
    const Liouvillian l(space, config);
    const auto report = oracle::basis_sweep(space, config, operator_route(l));
    EXPECT_EQ(report.inputs, 256u);
    EXPECT_LT(report.max_abs_difference, 1e-12);
    EXPECT_TRUE(report.suspect_terms.empty());
  }
}

TEST(Oracle, RandomHermitianAgreesWithOperatorRoute) {
  const FockSpace space(Truncation{1, 2, 1});
  const SimConfig config = lab_config();
  const Liouvillian l(space, config);
  const auto report = oracle::random_sweep(space, config, operator_route(l), 100, 2026);
  EXPECT_EQ(report.inputs, 100u);
  EXPECT_LT(report.max_abs_difference, 1e-12);
}

TEST(Oracle, LiteralZetaFactorIsLocalized) {
  const FockSpace space(Truncation{1, 1, 1});
  const SimConfig config = lab_config();
  const Liouvillian l(space, config);
  const auto report = oracle::basis_sweep(space, config, operator_route(l), oracle::ZetaRaiseFactor::literal);
  EXPECT_GT(report.max_abs_difference, 1.0);
  ASSERT_FALSE(report.suspect_terms.empty());
  for (const auto& [label, size] : report.suspect_terms) {
    EXPECT_NE(label.find("zeta.ket.2"), std::string::npos) << label;
  }
  // Without zeta the two factors coincide.
  SimConfig no_zeta = config;
  no_zeta.zeta_mev = 0.0;
  const Liouvillian l0(space, no_zeta);
  EXPECT_LT(oracle::basis_sweep(space, no_zeta, operator_route(l0), oracle::ZetaRaiseFactor::literal).max_abs_difference,
            1e-12);
}

TEST(Oracle, DiagonalSumVanishes) {
  const FockSpace space(Truncation{1, 2, 1});
  const SimConfig config = lab_config();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix rho = oracle::random_hermitian(static_cast<Index>(space.dim()), seed);
    EXPECT_LT(std::abs(oracle::elementwise_derivative(rho, config, space).trace()), 1e-12);
  }
}

TEST(Oracle, AdjointCovariance) {
  const FockSpace space(Truncation{1, 2, 1});
  const SimConfig config = lab_config();
  const auto dim = static_cast<Index>(space.dim());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix rho = oracle::random_hermitian(dim, seed) + kI * oracle::random_hermitian(dim, seed + 50);
    const Matrix a = oracle::elementwise_derivative(rho.adjoint(), config, space);
    const Matrix b = oracle::elementwise_derivative(rho, config, space).adjoint();
    EXPECT_LT(max_abs(a - b), 1e-12);
  }
}

TEST(Oracle, TermsSumToDerivative) {
  const FockSpace space(Truncation{1, 1, 1});
  const SimConfig config = lab_config();
  const Matrix rho = oracle::random_hermitian(16, 9);
  const auto terms = oracle::elementwise_terms(rho, config, space);
  const auto labels = oracle::term_labels();
  ASSERT_EQ(terms.size(), labels.size());
  Matrix total = Matrix::Zero(16, 16);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    EXPECT_EQ(terms[k].label, labels[k]);
    total += terms[k].values;
  }
  EXPECT_LT(max_abs(total - oracle::elementwise_derivative(rho, config, space)), 1e-12);
}

TEST(Oracle, RandomHermitianIsDeterministic) {
  const Matrix a = oracle::random_hermitian(8, 42), b = oracle::random_hermitian(8, 42);
  EXPECT_EQ(max_abs(a - b), 0.0);
  EXPECT_EQ(max_abs(a - a.adjoint()), 0.0);
  EXPECT_GT(max_abs(a - oracle::random_hermitian(8, 43)), 0.0);
}

}  // namespace
}  // namespace triphoton

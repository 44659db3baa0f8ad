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

#include "triphoton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace triphoton {

ReducedState reduce_to_mode1(const DensityMatrix& state) {
  const FockSpace& space = state.space;
  const auto levels = static_cast<Index>(space.truncation().n1 + 1);
  ReducedState reduced{Matrix::Zero(levels, levels), state.time, state.frame};

  std::vector<BasisState> basis(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) basis[i] = space.state(i);

  for (std::size_t c = 0; c < space.dim(); ++c) {
    const BasisState& ket = basis[c];
    for (std::size_t r = 0; r < space.dim(); ++r) {
      const BasisState& bra = basis[r];
      if (bra.dot != ket.dot || bra.n0 != ket.n0 || bra.n2 != ket.n2) continue;
      reduced.rho(bra.n1, ket.n1) += state.rho(static_cast<Index>(r), static_cast<Index>(c));
    }
  }
  return reduced;
}

std::vector<double> photon_distribution(const ReducedState& reduced) {
  std::vector<double> p(static_cast<std::size_t>(reduced.rho.rows()));
  for (Index n = 0; n < reduced.rho.rows(); ++n) p[n] = reduced.rho(n, n).real();
  return p;
}

ModeObservables mode_observables(const DensityMatrix& state) {
  Complex n0 = 0.0, n1 = 0.0, n2 = 0.0, excited = 0.0;
  for (std::size_t i = 0; i < state.space.dim(); ++i) {
    const BasisState s = state.space.state(i);
    const Complex w = state.rho(static_cast<Index>(i), static_cast<Index>(i));
    n0 += w * static_cast<double>(s.n0);
    n1 += w * static_cast<double>(s.n1);
    n2 += w * static_cast<double>(s.n2);
    if (s.excited()) excited += w;
  }
  ModeObservables out{n0.real(), n1.real(), n2.real(), excited.real(), state.purity(), 0.0};
  for (const Complex& v : {n0, n1, n2, excited}) out.max_imaginary = std::max(out.max_imaginary, std::abs(v.imag()));
  return out;
}

double off_sector_population(const DensityMatrix& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.space.dim(); ++i) {
    if (charge(state.space.state(i)) % 3 != 0) total += std::abs(state.rho(static_cast<Index>(i), static_cast<Index>(i)));
  }
  return total;
}

double WignerGrid::x(int i) const { return -spec.x_max + 2.0 * spec.x_max * i / (spec.n - 1); }
double WignerGrid::p(int j) const { return -spec.p_max + 2.0 * spec.p_max * j / (spec.n - 1); }

namespace {

// <k|D(beta)|j> for 0 <= k, j < levels via the normal-ordered form
// D = exp(-|beta|^2/2) exp(beta a^dag) exp(-beta^* a), which needs no truncation.
class DisplacementElements {
 public:
  explicit DisplacementElements(Index levels) : levels_(levels), sqrt_fact_(levels), inv_fact_(levels) {
    double fact = 1.0;
    for (Index k = 0; k < levels; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      sqrt_fact_[k] = std::sqrt(fact);
      inv_fact_[k] = 1.0 / fact;
    }
    raise_.resize(levels);
    lower_.resize(levels);
  }

  void evaluate(Complex beta, Matrix& out) {
    out.resize(levels_, levels_);
    Complex up = 1.0, down = 1.0;
    for (Index r = 0; r < levels_; ++r) {
      raise_[r] = up * inv_fact_[r];
      lower_[r] = down * inv_fact_[r];
      up *= beta;
      down *= -std::conj(beta);
    }
    const double envelope = std::exp(-0.5 * std::norm(beta));
    for (Index k = 0; k < levels_; ++k) {
      for (Index j = 0; j < levels_; ++j) {
        Complex sum = 0.0;
        for (Index m = 0; m <= std::min(k, j); ++m) sum += raise_[k - m] * lower_[j - m] * inv_fact_[m];
        out(k, j) = envelope * sqrt_fact_[k] * sqrt_fact_[j] * sum;
      }
    }
  }

 private:
  Index levels_;
  std::vector<double> sqrt_fact_;
  std::vector<double> inv_fact_;
  std::vector<Complex> raise_;
  std::vector<Complex> lower_;
};

Complex displaced_parity(const Matrix& rho, const Matrix& displacement) {
  // Tr[rho D(2 alpha) P] = sum_{j,k} rho_{jk} (-1)^j <k|D(2 alpha)|j>
  Complex sum = 0.0;
  for (Index j = 0; j < rho.rows(); ++j) {
    Complex row = 0.0;
    for (Index k = 0; k < rho.cols(); ++k) row += rho(j, k) * displacement(k, j);
    sum += (j % 2 == 0) ? row : -row;
  }
  return sum;
}

}  // namespace

double wigner_at(const ReducedState& reduced, double x, double p, double* imaginary) {
  DisplacementElements elements(reduced.rho.rows());
  Matrix displacement;
  elements.evaluate(std::sqrt(2.0) * Complex(x, p), displacement);
  const Complex w = displaced_parity(reduced.rho, displacement) / std::numbers::pi;
  if (imaginary != nullptr) *imaginary = w.imag();
  return w.real();
}

int wigner_grid_reach(const GridSpec& spec) {
  const double half_width = std::min(spec.x_max, spec.p_max);
  return static_cast<int>(std::floor((half_width * half_width - 5.0) / 2.0));
}

WignerGrid wigner(const ReducedState& reduced, const GridSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("Wigner grid needs at least 2 points per axis");
  if (!(spec.x_max > 0.0) || !(spec.p_max > 0.0)) throw std::invalid_argument("Wigner grid extents must be > 0");

  WignerGrid grid;
  grid.spec = spec;
  grid.values.resize(static_cast<std::size_t>(spec.n) * spec.n);

  DisplacementElements elements(reduced.rho.rows());
  Matrix displacement;
  double sum = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      elements.evaluate(std::sqrt(2.0) * Complex(grid.x(i), grid.p(j)), displacement);
      const Complex w = displaced_parity(reduced.rho, displacement) / std::numbers::pi;
      grid.values[static_cast<std::size_t>(i) * spec.n + j] = w.real();
      grid.max_imaginary = std::max(grid.max_imaginary, std::abs(w.imag()));
      sum += w.real();
    }
  }
  const double dx = 2.0 * spec.x_max / (spec.n - 1);
  const double dp = 2.0 * spec.p_max / (spec.n - 1);
  grid.integral = sum * dx * dp;

  const auto distribution = photon_distribution(reduced);
  const int reach = wigner_grid_reach(spec);
  double outside = 0.0;
  for (std::size_t n = 0; n < distribution.size(); ++n) {
    if (static_cast<int>(n) > reach) outside += std::abs(distribution[n]);
  }
  if (outside > 1e-6) {
    std::ostringstream msg;
    msg << "grid reaches photon number " << reach << " but " << outside << " of the population lies above it";
    grid.warning = msg.str();
  }
  return grid;
}

}  // namespace triphoton

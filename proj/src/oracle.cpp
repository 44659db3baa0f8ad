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

#include "triphoton/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace triphoton::oracle {

namespace {

constexpr DotLevel G = DotLevel::ground;
constexpr DotLevel E = DotLevel::excited;

// Square root of a possibly negative integer product, as written.
Complex root(double radicand) { return std::sqrt(Complex(radicand, 0.0)); }

BasisState at(DotLevel dot, int n0, int n1, int n2) { return BasisState{dot, n0, n1, n2}; }

struct Term {
  std::string label;
  std::function<Complex(const ElementIndex&)> coefficient;
  std::function<ElementIndex(const ElementIndex&)> source;
};

struct Equation {
  DotLevel bra;
  DotLevel ket;
  std::vector<Term> terms;
};

// Parameters named as in the equations.
struct Rates {
  double w0, wqd, g, zeta, xi, kappa, P;
};

// The zeta and xi lines are identical in all three equations up to the dot labels (a; b).
void append_conversion_terms(std::vector<Term>& terms, const std::string& prefix, DotLevel a, DotLevel b,
                             const Rates& r, ZetaRaiseFactor factor) {
  const double zeta = r.zeta, xi = r.xi;
  auto ket_side = [](DotLevel a, DotLevel b, int dl, int dm, int dn) {
    return [=](const ElementIndex& e) {
      return ElementIndex{at(a, e.bra.n0, e.bra.n1, e.bra.n2), at(b, e.ket.n0 + dl, e.ket.n1 + dm, e.ket.n2 + dn)};
    };
  };
  auto bra_side = [](DotLevel a, DotLevel b, int di, int dj, int dk) {
    return [=](const ElementIndex& e) {
      return ElementIndex{at(a, e.bra.n0 + di, e.bra.n1 + dj, e.bra.n2 + dk), at(b, e.ket.n0, e.ket.n1, e.ket.n2)};
    };
  };

  // + i zeta ( sqrt(l(m+1)(n+1)) rho_{..; l-1,m+1,n+1} + sqrt((l-1)mn) rho_{..; l+1,m-1,n-1} )
  terms.push_back({prefix + "zeta.ket.1",
                   [=](const ElementIndex& e) {
                     const int l = e.ket.n0, m = e.ket.n1, n = e.ket.n2;
                     return kI * zeta * root(double(l) * (m + 1) * (n + 1));
                   },
                   ket_side(a, b, -1, +1, +1)});
  terms.push_back({prefix + "zeta.ket.2",
                   [=](const ElementIndex& e) {
                     const int l = e.ket.n0, m = e.ket.n1, n = e.ket.n2;
                     const int first = factor == ZetaRaiseFactor::literal ? l - 1 : l + 1;
                     return kI * zeta * root(double(first) * m * n);
                   },
                   ket_side(a, b, +1, -1, -1)});
  // - i zeta ( sqrt((i+1)jk) rho_{i+1,j-1,k-1; ..} + sqrt(i(j+1)(k+1)) rho_{i-1,j+1,k+1; ..} )
  terms.push_back({prefix + "zeta.bra.1",
                   [=](const ElementIndex& e) {
                     const int i = e.bra.n0, j = e.bra.n1, k = e.bra.n2;
                     return -kI * zeta * root(double(i + 1) * j * k);
                   },
                   bra_side(a, b, +1, -1, -1)});
  terms.push_back({prefix + "zeta.bra.2",
                   [=](const ElementIndex& e) {
                     const int i = e.bra.n0, j = e.bra.n1, k = e.bra.n2;
                     return -kI * zeta * root(double(i) * (j + 1) * (k + 1));
                   },
                   bra_side(a, b, -1, +1, +1)});
  // + i xi ( sqrt(m(m-1)(n+1)) rho_{..; l,m-2,n+1} + sqrt((m+1)(m+2)n) rho_{..; l,m+2,n-1} )
  terms.push_back({prefix + "xi.ket.1",
                   [=](const ElementIndex& e) {
                     const int m = e.ket.n1, n = e.ket.n2;
                     return kI * xi * root(double(m) * (m - 1) * (n + 1));
                   },
                   ket_side(a, b, 0, -2, +1)});
  terms.push_back({prefix + "xi.ket.2",
                   [=](const ElementIndex& e) {
                     const int m = e.ket.n1, n = e.ket.n2;
                     return kI * xi * root(double(m + 1) * (m + 2) * n);
                   },
                   ket_side(a, b, 0, +2, -1)});
  // - i xi ( sqrt((j+1)(j+2)k) rho_{i,j+2,k-1; ..} + sqrt(j(j-1)(k+1)) rho_{i,j-2,k+1; ..} )
  terms.push_back({prefix + "xi.bra.1",
                   [=](const ElementIndex& e) {
                     const int j = e.bra.n1, k = e.bra.n2;
                     return -kI * xi * root(double(j + 1) * (j + 2) * k);
                   },
                   bra_side(a, b, 0, +2, -1)});
  terms.push_back({prefix + "xi.bra.2",
                   [=](const ElementIndex& e) {
                     const int j = e.bra.n1, k = e.bra.n2;
                     return -kI * xi * root(double(j) * (j - 1) * (k + 1));
                   },
                   bra_side(a, b, 0, -2, +1)});
}

Complex free_phase(const ElementIndex& e, double w0) {
  const int i = e.bra.n0, j = e.bra.n1, k = e.bra.n2;
  const int l = e.ket.n0, m = e.ket.n1, n = e.ket.n2;
  return kI * w0 * ((l - i) + (m - j) / 3.0 + 2.0 * (n - k) / 3.0);
}

ElementIndex same(const ElementIndex& e) { return e; }

std::vector<Equation> printed_equations(const Rates& r, ZetaRaiseFactor factor) {
  std::vector<Equation> equations;

  {  // d/dt rho_{g,i,j,k; g,l,m,n}
    Equation eq{G, G, {}};
    eq.terms.push_back({"gg.diag.phase", [=](const ElementIndex& e) { return free_phase(e, r.w0); }, same});
    eq.terms.push_back({"gg.diag.kappa",
                        [=](const ElementIndex& e) { return Complex(-r.kappa * (e.ket.n0 + e.bra.n0) / 2.0); }, same});
    eq.terms.push_back({"gg.diag.pump", [=](const ElementIndex&) { return Complex(-r.P); }, same});
    eq.terms.push_back({"gg.g.ket", [=](const ElementIndex& e) { return kI * r.g * root(e.ket.n0); },
                        [](const ElementIndex& e) {
                          return ElementIndex{e.bra, at(E, e.ket.n0 - 1, e.ket.n1, e.ket.n2)};
                        }});
    eq.terms.push_back({"gg.g.bra", [=](const ElementIndex& e) { return -kI * r.g * root(e.bra.n0); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(E, e.bra.n0 - 1, e.bra.n1, e.bra.n2), e.ket};
                        }});
    eq.terms.push_back({"gg.kappa.feed",
                        [=](const ElementIndex& e) { return r.kappa * root(double(e.bra.n0 + 1) * (e.ket.n0 + 1)); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(G, e.bra.n0 + 1, e.bra.n1, e.bra.n2),
                                              at(G, e.ket.n0 + 1, e.ket.n1, e.ket.n2)};
                        }});
    append_conversion_terms(eq.terms, "gg.", G, G, r, factor);
    equations.push_back(std::move(eq));
  }

  {  // d/dt rho_{e,i,j,k; e,l,m,n}
    Equation eq{E, E, {}};
    eq.terms.push_back({"ee.diag.phase", [=](const ElementIndex& e) { return free_phase(e, r.w0); }, same});
    eq.terms.push_back({"ee.diag.kappa",
                        [=](const ElementIndex& e) { return Complex(-r.kappa * (e.ket.n0 + e.bra.n0) / 2.0); }, same});
    eq.terms.push_back({"ee.pump.feed", [=](const ElementIndex&) { return Complex(r.P); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(G, e.bra.n0, e.bra.n1, e.bra.n2), at(G, e.ket.n0, e.ket.n1, e.ket.n2)};
                        }});
    eq.terms.push_back({"ee.g.ket", [=](const ElementIndex& e) { return kI * r.g * root(e.ket.n0 + 1); },
                        [](const ElementIndex& e) {
                          return ElementIndex{e.bra, at(G, e.ket.n0 + 1, e.ket.n1, e.ket.n2)};
                        }});
    eq.terms.push_back({"ee.g.bra", [=](const ElementIndex& e) { return -kI * r.g * root(e.bra.n0 + 1); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(G, e.bra.n0 + 1, e.bra.n1, e.bra.n2), e.ket};
                        }});
    eq.terms.push_back({"ee.kappa.feed",
                        [=](const ElementIndex& e) { return r.kappa * root(double(e.bra.n0 + 1) * (e.ket.n0 + 1)); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(E, e.bra.n0 + 1, e.bra.n1, e.bra.n2),
                                              at(E, e.ket.n0 + 1, e.ket.n1, e.ket.n2)};
                        }});
    append_conversion_terms(eq.terms, "ee.", E, E, r, factor);
    equations.push_back(std::move(eq));
  }

  {  // d/dt rho_{g,i,j,k; e,l,m,n}
    Equation eq{G, E, {}};
    eq.terms.push_back({"ge.diag.phase", [=](const ElementIndex& e) { return free_phase(e, r.w0); }, same});
    eq.terms.push_back({"ge.diag.qd", [=](const ElementIndex&) { return kI * r.wqd; }, same});
    eq.terms.push_back({"ge.diag.kappa",
                        [=](const ElementIndex& e) { return Complex(-r.kappa * (e.ket.n0 + e.bra.n0) / 2.0); }, same});
    eq.terms.push_back({"ge.diag.pump", [=](const ElementIndex&) { return Complex(-r.P / 2.0); }, same});
    eq.terms.push_back({"ge.g.ket", [=](const ElementIndex& e) { return kI * r.g * root(e.ket.n0 + 1); },
                        [](const ElementIndex& e) {
                          return ElementIndex{e.bra, at(G, e.ket.n0 + 1, e.ket.n1, e.ket.n2)};
                        }});
    eq.terms.push_back({"ge.g.bra", [=](const ElementIndex& e) { return -kI * r.g * root(e.bra.n0); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(E, e.bra.n0 - 1, e.bra.n1, e.bra.n2), e.ket};
                        }});
    eq.terms.push_back({"ge.kappa.feed",
                        [=](const ElementIndex& e) { return r.kappa * root(double(e.bra.n0 + 1) * (e.ket.n0 + 1)); },
                        [](const ElementIndex& e) {
                          return ElementIndex{at(G, e.bra.n0 + 1, e.bra.n1, e.bra.n2),
                                              at(E, e.ket.n0 + 1, e.ket.n1, e.ket.n2)};
                        }});
    append_conversion_terms(eq.terms, "ge.", G, E, r, factor);
    equations.push_back(std::move(eq));
  }

  {  // d/dt rho_{e,..; g,..}: Hermitian conjugate of the ge equation. A ge term
     // c(M) rho_{X;Y} at mirrored element M becomes conj(c(M)) rho_{Y;X}.
    Equation eq{E, G, {}};
    for (const Term& t : equations.back().terms) {
      const auto coefficient = t.coefficient;
      const auto source = t.source;
      eq.terms.push_back({"eg(hc)." + t.label.substr(3),
                          [=](const ElementIndex& e) { return std::conj(coefficient(ElementIndex{e.ket, e.bra})); },
                          [=](const ElementIndex& e) {
                            const ElementIndex s = source(ElementIndex{e.ket, e.bra});
                            return ElementIndex{s.ket, s.bra};
                          }});
    }
    equations.push_back(std::move(eq));
  }
  return equations;
}

Rates rates_from(const SimConfig& config) {
  if (config.frame != Frame::lab) {
    throw ConfigError("frame", "the element-wise equations carry explicit lab-frame phases; use frame = lab");
  }
  config.validate_physics();
  return {config.omega0_mev, config.omega_qd_mev, config.g_mev,   config.zeta_mev,
          config.xi_mev,     config.kappa_mev,    config.pump_mev};
}

}  // namespace

std::vector<TermContribution> elementwise_terms(const Matrix& rho, const SimConfig& config, const FockSpace& space,
                                                ZetaRaiseFactor factor) {
  const auto dim = static_cast<Index>(space.dim());
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("rho does not match the Fock space");

  const auto equations = printed_equations(rates_from(config), factor);
  std::vector<BasisState> basis(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) basis[i] = space.state(i);

  std::vector<TermContribution> out;
  for (const Equation& eq : equations) {
    for (const Term& term : eq.terms) {
      TermContribution contribution{term.label, Matrix::Zero(dim, dim)};
      for (Index r = 0; r < dim; ++r) {
        if (basis[r].dot != eq.bra) continue;
        for (Index c = 0; c < dim; ++c) {
          if (basis[c].dot != eq.ket) continue;
          const ElementIndex element{basis[r], basis[c]};
          const ElementIndex src = term.source(element);
          if (!space.contains(src.bra) || !space.contains(src.ket)) continue;
          const Complex value = rho(static_cast<Index>(space.index(src.bra)), static_cast<Index>(space.index(src.ket)));
          if (value == Complex(0.0, 0.0)) continue;
          contribution.values(r, c) = term.coefficient(element) * value;
        }
      }
      out.push_back(std::move(contribution));
    }
  }
  return out;
}

Matrix elementwise_derivative(const Matrix& rho, const SimConfig& config, const FockSpace& space,
                              ZetaRaiseFactor factor) {
  Matrix total = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& term : elementwise_terms(rho, config, space, factor)) total += term.values;
  return total;
}

std::vector<std::string> term_labels() {
  std::vector<std::string> labels;
  for (const auto& eq : printed_equations(Rates{1, 1, 1, 1, 1, 1, 1}, ZetaRaiseFactor::conventional)) {
    for (const auto& t : eq.terms) labels.push_back(t.label);
  }
  return labels;
}

namespace {

void compare_one(const Matrix& rho, const FockSpace& space, const SimConfig& config, const Generator& reference,
                 ZetaRaiseFactor factor, double tolerance, SweepReport& report) {
  const auto terms = elementwise_terms(rho, config, space, factor);
  Matrix oracle = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& t : terms) oracle += t.values;
  const Eigen::MatrixXd diff = (oracle - reference(rho)).cwiseAbs();
  report.max_abs_difference = std::max(report.max_abs_difference, diff.maxCoeff());
  ++report.inputs;
  for (Index c = 0; c < diff.cols(); ++c) {
    for (Index r = 0; r < diff.rows(); ++r) {
      if (!(diff(r, c) <= tolerance)) {
        for (const auto& t : terms) {
          if (t.values(r, c) == Complex(0.0, 0.0)) continue;
          double& worst = report.suspect_terms[t.label];
          worst = std::max(worst, diff(r, c));
        }
      }
    }
  }
}

}  // namespace

SweepReport basis_sweep(const FockSpace& space, const SimConfig& config, const Generator& reference,
                        ZetaRaiseFactor factor, double tolerance) {
  const auto dim = static_cast<Index>(space.dim());
  SweepReport report;
  Matrix rho = Matrix::Zero(dim, dim);
  for (Index x = 0; x < dim; ++x) {
    for (Index y = 0; y < dim; ++y) {
      rho(x, y) = 1.0;
      compare_one(rho, space, config, reference, factor, tolerance, report);
      rho(x, y) = 0.0;
    }
  }
  return report;
}

SweepReport random_sweep(const FockSpace& space, const SimConfig& config, const Generator& reference,
                         std::size_t count, std::uint64_t seed, ZetaRaiseFactor factor, double tolerance) {
  SweepReport report;
  for (std::size_t k = 0; k < count; ++k) {
    compare_one(random_hermitian(static_cast<Index>(space.dim()), seed + k), space, config, reference, factor,
                tolerance, report);
  }
  return report;
}

Matrix random_hermitian(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix m(dim, dim);
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) m(r, c) = Complex(uniform(rng), uniform(rng));
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace triphoton::oracle

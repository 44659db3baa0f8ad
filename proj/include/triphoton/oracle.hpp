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

// Element-wise equations of motion for rho_{a,i,j,k; b,l,m,n}, written out term by term in
// the lab frame. Independent of the operator-level Liouvillian and used to check it.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "triphoton/config.hpp"
#include "triphoton/fock_space.hpp"

namespace triphoton::oracle {

/// How to evaluate the zeta term feeding rho_{..; l+1, m-1, n-1} on the ket side.
/// `literal` uses sqrt((l-1) m n) as the equations are usually quoted (complex sqrt when
/// l = 0); `conventional` uses sqrt((l+1) m n), the matrix element of a0^dag a1 a2.
enum class ZetaRaiseFactor { literal, conventional };

/// <a,i,j,k| rho |b,l,m,n>.
struct ElementIndex {
  BasisState bra;
  BasisState ket;
};

/// One printed term of one equation, evaluated on every matrix element.
struct TermContribution {
  std::string label;
  Matrix values;
};

/// All printed terms; their sum is elementwise_derivative. Throws ConfigError("frame") for
/// rotating-frame configs. Out-of-range source elements contribute zero.
std::vector<TermContribution> elementwise_terms(const Matrix& rho, const SimConfig& config, const FockSpace& space,
                                                ZetaRaiseFactor factor = ZetaRaiseFactor::conventional);

Matrix elementwise_derivative(const Matrix& rho, const SimConfig& config, const FockSpace& space,
                              ZetaRaiseFactor factor = ZetaRaiseFactor::conventional);

/// Labels of every printed term, in evaluation order.
std::vector<std::string> term_labels();

using Generator = std::function<Matrix(const Matrix&)>;

struct SweepReport {
  double max_abs_difference = 0.0;
  std::size_t inputs = 0;
  // Printed terms contributing at output elements that disagree, with the largest mismatch.
  std::map<std::string, double> suspect_terms;
};

/// Compares the oracle with `reference` on every single-element input |x><y|.
SweepReport basis_sweep(const FockSpace& space, const SimConfig& config, const Generator& reference,
                        ZetaRaiseFactor factor = ZetaRaiseFactor::conventional, double tolerance = 1e-12);

/// Compares on `count` random Hermitian matrices (seeds seed, seed+1, ...).
SweepReport random_sweep(const FockSpace& space, const SimConfig& config, const Generator& reference,
                         std::size_t count, std::uint64_t seed,
                         ZetaRaiseFactor factor = ZetaRaiseFactor::conventional, double tolerance = 1e-12);

/// Random Hermitian matrix, real and imaginary parts of order one. Deterministic in `seed`.
Matrix random_hermitian(Index dim, std::uint64_t seed);

}  // namespace triphoton::oracle

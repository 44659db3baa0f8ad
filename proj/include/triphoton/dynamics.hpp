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

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "triphoton/config.hpp"
#include "triphoton/fock_space.hpp"

namespace triphoton {

/// Conserved charge Q = 3 n0 + 3 sigma^dag sigma + n1 + 2 n2 of a basis state.
/// Every Hamiltonian term conserves it; the pump raises it by 3 and cavity loss lowers it by 3.
int charge(const BasisState& state);

/// Diagonal operator with entries Q(s).
OperatorMatrix charge_operator(const FockSpace& space);

/// H = H_JC + H_SPDC with omega1 = omega0/3 and omega2 = 2 omega0/3.
///
/// Lab frame: free part omega0 n0 + (omega0/3) n1 + (2 omega0/3) n2 + omega_qd sigma^dag sigma,
/// assembled as (omega0/3) Q + (omega_qd - omega0) sigma^dag sigma so that all states of one
/// charge sector share the same free energy bit for bit when omega_qd == omega0.
/// Rotating frame: the (omega0/3) Q part is removed, leaving (omega_qd - omega0) sigma^dag sigma.
/// The interaction terms commute with Q and are identical in both frames.
OperatorMatrix build_hamiltonian(const FockSpace& space, const SimConfig& config);

/// Basis indices grouped by conserved charge, in increasing charge order.
class ChargeSectors {
 public:
  explicit ChargeSectors(const FockSpace& space);

  std::size_t size() const noexcept { return charges_.size(); }
  int charge(std::size_t sector) const { return charges_[sector]; }
  const std::vector<Index>& members(std::size_t sector) const { return members_[sector]; }
  std::size_t sector_of(Index basis_index) const { return sector_of_[basis_index]; }
  std::optional<std::size_t> find(int charge) const;

  Matrix gather(const Matrix& full, std::size_t row_sector, std::size_t col_sector) const;
  SparseMatrix gather(const SparseMatrix& full, std::size_t row_sector, std::size_t col_sector) const;
  void scatter(const Matrix& block, std::size_t row_sector, std::size_t col_sector, Matrix& full) const;

 private:
  std::vector<int> charges_;
  std::vector<std::vector<Index>> members_;
  std::vector<std::size_t> sector_of_;
};

/// Which (row sector, col sector) blocks of a density matrix can be nonzero, plus the
/// jump-operator couplings between them. Closed under the Liouvillian: H keeps a block in
/// place and each jump operator moves block (Q, Q') to (Q + s, Q' + s) for its shift s.
struct BlockPattern {
  struct Feed {
    std::size_t jump;
    std::size_t source_block;
  };
  struct Entry {
    std::size_t row_sector;
    std::size_t col_sector;
    std::vector<Feed> feeds;
  };
  std::vector<Entry> entries;
};

/// Density matrix stored on a BlockPattern. Entries outside the pattern are exactly zero.
struct BlockedState {
  std::shared_ptr<const BlockPattern> pattern;
  std::vector<Matrix> blocks;
};

/// Generator of the master equation
///   d rho/dt = i[rho, H] + (P/2)(2 sigma^dag rho sigma - {sigma sigma^dag, rho})
///                        + (kappa/2)(2 a0 rho a0^dag - {a0^dag a0, rho}).
///
/// Two evaluation routes are provided: `apply` on a dense matrix, written term by term in
/// operator form, and `apply_blocked` on charge-sector blocks, which is what the integrator
/// uses. Both are pure functions of their input.
class Liouvillian {
 public:
  Liouvillian(const FockSpace& space, const SimConfig& config);

  const FockSpace& space() const noexcept { return space_; }
  Frame frame() const noexcept { return frame_; }
  const OperatorMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const ChargeSectors& sectors() const noexcept { return sectors_; }

  Matrix apply(const Matrix& rho) const;

  /// Splits `rho` into the smallest closed block pattern containing its support; blocks
  /// outside that pattern stay exactly zero under the generator.
  BlockedState block(const Matrix& rho) const;
  Matrix unblock(const BlockedState& state) const;
  void apply_blocked(const BlockedState& rho, BlockedState& out) const;

  /// max |H_ij|.
  double hamiltonian_max_abs() const;
  /// Gershgorin bound max_i sum_j |H_ij| on the spectral radius of H.
  double spectral_bound() const;
  /// Largest decay rate of a diagonal element under the dissipators, kappa * trunc0 + P.
  double dissipation_bound() const;

 private:
  struct Jump {
    double rate;
    int shift;
    // Indexed by source sector; empty when the target sector is outside the truncation.
    std::vector<SparseMatrix> blocks;
    std::vector<std::optional<std::size_t>> target;
  };

  FockSpace space_;
  Frame frame_;
  double pump_;
  double kappa_;
  OperatorMatrix hamiltonian_;
  OperatorMatrix sigma_;
  OperatorMatrix a0_;
  SparseMatrix sigma_sigma_dag_;
  SparseMatrix n0_;
  ChargeSectors sectors_;
  std::vector<SparseMatrix> drift_;
  std::vector<Jump> jumps_;
};

}  // namespace triphoton

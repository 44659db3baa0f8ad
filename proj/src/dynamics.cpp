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

#include "triphoton/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace triphoton {

namespace {

// out += scale * a * m^dag, one column of a at a time.
void add_times_adjoint(const Matrix& a, const SparseMatrix& m, Complex scale, Matrix& out) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out.col(it.index()).noalias() += (scale * std::conj(it.value())) * a.col(k);
    }
  }
}

}  // namespace

int charge(const BasisState& s) { return 3 * s.n0 + (s.excited() ? 3 : 0) + s.n1 + 2 * s.n2; }

OperatorMatrix charge_operator(const FockSpace& space) {
  const auto dim = static_cast<Index>(space.dim());
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const int q = charge(space.state(i));
    if (q != 0) entries.emplace_back(static_cast<Index>(i), static_cast<Index>(i), Complex(q, 0.0));
  }
  OperatorMatrix op{SparseMatrix(dim, dim), "Q"};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

OperatorMatrix build_hamiltonian(const FockSpace& space, const SimConfig& config) {
  config.validate_physics();

  const SparseMatrix a0 = ladder(space, Mode::omega0, Ladder::lower).matrix;
  const SparseMatrix a1 = ladder(space, Mode::omega1, Ladder::lower).matrix;
  const SparseMatrix a2 = ladder(space, Mode::omega2, Ladder::lower).matrix;
  const SparseMatrix a0d = a0.adjoint(), a1d = a1.adjoint(), a2d = a2.adjoint();
  const SparseMatrix sigma = dot_lowering(space).matrix;

  // Half of each Hermitian pair; H = X + X^dag + diagonal.
  SparseMatrix pairs = config.g_mev * SparseMatrix(a0d * sigma);
  pairs += config.zeta_mev * SparseMatrix(a0 * SparseMatrix(a1d * a2d));
  pairs += config.xi_mev * SparseMatrix(SparseMatrix(a1d * a1d) * a2);

  const auto dim = static_cast<Index>(space.dim());
  const double detuning_term = config.omega_qd_mev - config.omega0_mev;
  const double per_charge = config.frame == Frame::lab ? config.omega0_mev / 3.0 : 0.0;
  std::vector<Triplet> diagonal;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const BasisState s = space.state(i);
    const double energy = per_charge * charge(s) + (s.excited() ? detuning_term : 0.0);
    if (energy != 0.0) diagonal.emplace_back(static_cast<Index>(i), static_cast<Index>(i), Complex(energy, 0.0));
  }
  SparseMatrix free(dim, dim);
  free.setFromTriplets(diagonal.begin(), diagonal.end());

  SparseMatrix h = free + pairs + SparseMatrix(pairs.adjoint());
  h.prune(Complex(0.0, 0.0));
  return {std::move(h), config.frame == Frame::lab ? "H_lab" : "H_rot"};
}

ChargeSectors::ChargeSectors(const FockSpace& space) : sector_of_(space.dim()) {
  std::map<int, std::vector<Index>> grouped;
  for (std::size_t i = 0; i < space.dim(); ++i) grouped[triphoton::charge(space.state(i))].push_back(static_cast<Index>(i));
  for (auto& [q, members] : grouped) {
    for (Index i : members) sector_of_[i] = charges_.size();
    charges_.push_back(q);
    members_.push_back(std::move(members));
  }
}

std::optional<std::size_t> ChargeSectors::find(int q) const {
  const auto it = std::lower_bound(charges_.begin(), charges_.end(), q);
  if (it == charges_.end() || *it != q) return std::nullopt;
  return static_cast<std::size_t>(it - charges_.begin());
}

Matrix ChargeSectors::gather(const Matrix& full, std::size_t row_sector, std::size_t col_sector) const {
  const auto& rows = members_[row_sector];
  const auto& cols = members_[col_sector];
  Matrix block(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) block(r, c) = full(rows[r], cols[c]);
  }
  return block;
}

SparseMatrix ChargeSectors::gather(const SparseMatrix& full, std::size_t row_sector, std::size_t col_sector) const {
  const auto& rows = members_[row_sector];
  const auto& cols = members_[col_sector];
  std::vector<Triplet> entries;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (SparseMatrix::InnerIterator it(full, cols[c]); it; ++it) {
      if (sector_of_[it.row()] != row_sector) continue;
      const auto r = std::lower_bound(rows.begin(), rows.end(), it.row()) - rows.begin();
      entries.emplace_back(static_cast<Index>(r), static_cast<Index>(c), it.value());
    }
  }
  SparseMatrix block(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  block.setFromTriplets(entries.begin(), entries.end());
  return block;
}

void ChargeSectors::scatter(const Matrix& block, std::size_t row_sector, std::size_t col_sector, Matrix& full) const {
  const auto& rows = members_[row_sector];
  const auto& cols = members_[col_sector];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) full(rows[r], cols[c]) = block(r, c);
  }
}

Liouvillian::Liouvillian(const FockSpace& space, const SimConfig& config)
    : space_(space),
      frame_(config.frame),
      pump_(config.pump_mev),
      kappa_(config.kappa_mev),
      hamiltonian_(build_hamiltonian(space, config)),
      sigma_(dot_lowering(space)),
      a0_(ladder(space, Mode::omega0, Ladder::lower)),
      sigma_sigma_dag_(sigma_.matrix * SparseMatrix(sigma_.matrix.adjoint())),
      n0_(SparseMatrix(a0_.matrix.adjoint()) * a0_.matrix),
      sectors_(space) {
  const std::size_t n_sectors = sectors_.size();
  for (Index k = 0; k < hamiltonian_.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(hamiltonian_.matrix, k); it; ++it) {
      if (sectors_.sector_of(it.row()) != sectors_.sector_of(it.col())) {
        throw std::logic_error("Hamiltonian couples different charge sectors");
      }
    }
  }

  // Jump operators C with rates: pump C = sigma^dag (Q + 3), loss C = a0 (Q - 3).
  const SparseMatrix sigma_dag = sigma_.matrix.adjoint();
  const std::pair<double, std::pair<int, const SparseMatrix*>> jump_ops[] = {
      {pump_, {+3, &sigma_dag}}, {kappa_, {-3, &a0_.matrix}}};

  // Drift M = -i H_eff with H_eff = H - (i/2) sum_c rate_c C^dag C; block diagonal in Q.
  SparseMatrix decay(static_cast<Index>(space.dim()), static_cast<Index>(space.dim()));
  for (const auto& [rate, op] : jump_ops) {
    decay += rate * SparseMatrix(SparseMatrix(op.second->adjoint()) * (*op.second));
  }
  const SparseMatrix drift = -kI * hamiltonian_.matrix - 0.5 * decay;
  drift_.reserve(n_sectors);
  for (std::size_t s = 0; s < n_sectors; ++s) drift_.push_back(sectors_.gather(drift, s, s));

  for (const auto& [rate, op] : jump_ops) {
    Jump jump{rate, op.first, {}, {}};
    for (std::size_t s = 0; s < n_sectors; ++s) {
      const auto target = sectors_.find(sectors_.charge(s) + jump.shift);
      jump.target.push_back(target);
      jump.blocks.push_back(target ? sectors_.gather(*op.second, *target, s) : SparseMatrix());
    }
    jumps_.push_back(std::move(jump));
  }
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  const SparseMatrix& h = hamiltonian_.matrix;
  const SparseMatrix& sigma = sigma_.matrix;
  const SparseMatrix& a0 = a0_.matrix;

  // i[rho, H]
  Matrix out = kI * (rho * h - h * rho);
  // (P/2)(2 sigma^dag rho sigma - {sigma sigma^dag, rho})
  out += (pump_ / 2.0) * (2.0 * (sigma.adjoint() * (rho * sigma)) - sigma_sigma_dag_ * rho - rho * sigma_sigma_dag_);
  // (kappa/2)(2 a0 rho a0^dag - {a0^dag a0, rho})
  out += (kappa_ / 2.0) * (2.0 * (a0 * (rho * SparseMatrix(a0.adjoint()))) - n0_ * rho - rho * n0_);
  return out;
}

BlockedState Liouvillian::block(const Matrix& rho) const {
  if (rho.rows() != static_cast<Index>(space_.dim()) || rho.cols() != rho.rows()) {
    throw std::invalid_argument("density matrix dimension does not match the Fock space");
  }
  const std::size_t n = sectors_.size();

  // Seed with the blocks holding any nonzero entry, then close under the jump shifts.
  std::set<std::pair<std::size_t, std::size_t>> active;
  std::vector<std::pair<std::size_t, std::size_t>> frontier;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool nonzero = false;
      for (Index c : sectors_.members(b)) {
        for (Index r : sectors_.members(a)) nonzero = nonzero || rho(r, c) != Complex(0.0, 0.0);
      }
      if (nonzero && active.insert({a, b}).second) frontier.emplace_back(a, b);
    }
  }
  while (!frontier.empty()) {
    const auto [a, b] = frontier.back();
    frontier.pop_back();
    for (const Jump& jump : jumps_) {
      if (jump.rate == 0.0 || !jump.target[a] || !jump.target[b]) continue;
      if (active.insert({*jump.target[a], *jump.target[b]}).second) frontier.emplace_back(*jump.target[a], *jump.target[b]);
    }
  }

  auto pattern = std::make_shared<BlockPattern>();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup;
  for (const auto& [a, b] : active) {
    lookup[{a, b}] = pattern->entries.size();
    pattern->entries.push_back({a, b, {}});
  }
  // Jump c feeds block (a, b) from (a', b') when C maps a' -> a and b' -> b.
  for (auto& entry : pattern->entries) {
    for (std::size_t c = 0; c < jumps_.size(); ++c) {
      if (jumps_[c].rate == 0.0) continue;
      const auto src_row = sectors_.find(sectors_.charge(entry.row_sector) - jumps_[c].shift);
      const auto src_col = sectors_.find(sectors_.charge(entry.col_sector) - jumps_[c].shift);
      if (!src_row || !src_col) continue;
      const auto source = lookup.find({*src_row, *src_col});
      if (source != lookup.end()) entry.feeds.push_back({c, source->second});
    }
  }

  BlockedState state{pattern, {}};
  state.blocks.reserve(pattern->entries.size());
  for (const auto& entry : pattern->entries) {
    state.blocks.push_back(sectors_.gather(rho, entry.row_sector, entry.col_sector));
  }
  return state;
}

Matrix Liouvillian::unblock(const BlockedState& state) const {
  Matrix full = Matrix::Zero(static_cast<Index>(space_.dim()), static_cast<Index>(space_.dim()));
  for (std::size_t k = 0; k < state.blocks.size(); ++k) {
    const auto& entry = state.pattern->entries[k];
    sectors_.scatter(state.blocks[k], entry.row_sector, entry.col_sector, full);
  }
  return full;
}

void Liouvillian::apply_blocked(const BlockedState& rho, BlockedState& out) const {
  const auto& entries = rho.pattern->entries;
  if (out.pattern != rho.pattern || out.blocks.size() != rho.blocks.size()) {
    out.pattern = rho.pattern;
    out.blocks.resize(rho.blocks.size());
  }
  Matrix scratch;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& entry = entries[k];
    Matrix& result = out.blocks[k];
    const Matrix& block = rho.blocks[k];
    result.noalias() = drift_[entry.row_sector] * block;
    add_times_adjoint(block, drift_[entry.col_sector], 1.0, result);
    for (const auto& feed : entry.feeds) {
      const Jump& jump = jumps_[feed.jump];
      const Matrix& source = rho.blocks[feed.source_block];
      const auto& src = entries[feed.source_block];
      const SparseMatrix& right = jump.blocks[src.col_sector];
      scratch.setZero(source.rows(), right.rows());
      add_times_adjoint(source, right, jump.rate, scratch);
      result.noalias() += jump.blocks[src.row_sector] * scratch;
    }
  }
}

double Liouvillian::hamiltonian_max_abs() const {
  double max_abs = 0.0;
  for (Index k = 0; k < hamiltonian_.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(hamiltonian_.matrix, k); it; ++it) max_abs = std::max(max_abs, std::abs(it.value()));
  }
  return max_abs;
}

double Liouvillian::dissipation_bound() const {
  return kappa_ * space_.cutoff(Mode::omega0) + pump_;
}

double Liouvillian::spectral_bound() const {
  // H is Hermitian, so column sums equal row sums.
  double bound = 0.0;
  for (Index k = 0; k < hamiltonian_.matrix.outerSize(); ++k) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(hamiltonian_.matrix, k); it; ++it) sum += std::abs(it.value());
    bound = std::max(bound, sum);
  }
  return bound;
}

}  // namespace triphoton

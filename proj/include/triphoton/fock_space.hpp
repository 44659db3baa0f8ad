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

#include <array>
#include <cstdint>
#include <string>

#include "triphoton/types.hpp"

namespace triphoton {

enum class DotLevel : std::uint8_t { ground = 0, excited = 1 };

/// The three cavity modes: omega0 (coupled to the dot), omega1 and omega2 (down-converted).
enum class Mode : int { omega0 = 0, omega1 = 1, omega2 = 2 };

enum class Ladder { lower, raise };

/// One product basis vector |dot, n0, n1, n2>.
struct BasisState {
  DotLevel dot = DotLevel::ground;
  int n0 = 0;
  int n1 = 0;
  int n2 = 0;

  int occupation(Mode mode) const;
  bool excited() const { return dot == DotLevel::excited; }

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

std::string to_string(const BasisState& state);

/// Per-mode photon-number cutoffs. Defaults are the production truncation.
struct Truncation {
  int n0 = 3;
  int n1 = 9;
  int n2 = 4;

  int operator[](Mode mode) const;
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// Truncated composite space {|a, n0, n1, n2>}.
///
/// Flat index ordering is fixed: dot level slowest, then n0, n1, and n2 fastest,
///   index = ((dot * (t0+1) + n0) * (t1+1) + n1) * (t2+1) + n2.
/// Output files depend on this ordering, so it must not change.
class FockSpace {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 4096;

  FockSpace(Truncation truncation, std::size_t dimension_cap = kDefaultDimensionCap);

  const Truncation& truncation() const noexcept { return truncation_; }
  int cutoff(Mode mode) const { return truncation_[mode]; }
  std::size_t dim() const noexcept { return dim_; }

  bool contains(const BasisState& state) const noexcept;

  /// Throws std::out_of_range for states outside the truncation.
  std::size_t index(const BasisState& state) const;
  BasisState state(std::size_t index) const;

  friend bool operator==(const FockSpace& a, const FockSpace& b) { return a.truncation_ == b.truncation_; }

 private:
  Truncation truncation_;
  std::size_t dim_;
};

/// Throws std::invalid_argument for negative cutoffs and std::length_error when the
/// dimension overflows or exceeds `dimension_cap`.
FockSpace build_space(int trunc0, int trunc1, int trunc2,
                      std::size_t dimension_cap = FockSpace::kDefaultDimensionCap);

/// Sparse operator on the composite space.
struct OperatorMatrix {
  SparseMatrix matrix;
  std::string label;

  Index dim() const { return matrix.rows(); }
  OperatorMatrix adjoint() const;
};

/// a_mode (lower) or a_mode^dagger (raise). Raising past the cutoff annihilates the state.
OperatorMatrix ladder(const FockSpace& space, Mode mode, Ladder kind);

/// sigma: |e,...> -> |g,...>, |g,...> -> 0.
OperatorMatrix dot_lowering(const FockSpace& space);

/// Number operator a^dagger a of one mode (diagonal).
OperatorMatrix number_operator(const FockSpace& space, Mode mode);

}  // namespace triphoton

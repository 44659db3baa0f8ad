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

#include "triphoton/fock_space.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace triphoton {

std::string to_string(Frame frame) { return frame == Frame::lab ? "lab" : "rotating"; }

int BasisState::occupation(Mode mode) const {
  switch (mode) {
    case Mode::omega0: return n0;
    case Mode::omega1: return n1;
    case Mode::omega2: return n2;
  }
  throw std::invalid_argument("invalid mode " + std::to_string(static_cast<int>(mode)));
}

std::string to_string(const BasisState& s) {
  return std::string("|") + (s.excited() ? "e" : "g") + "," + std::to_string(s.n0) + "," +
         std::to_string(s.n1) + "," + std::to_string(s.n2) + ">";
}

int Truncation::operator[](Mode mode) const {
  switch (mode) {
    case Mode::omega0: return n0;
    case Mode::omega1: return n1;
    case Mode::omega2: return n2;
  }
  throw std::invalid_argument("invalid mode " + std::to_string(static_cast<int>(mode)));
}

namespace {

std::size_t checked_dimension(const Truncation& t, std::size_t cap) {
  if (t.n0 < 0 || t.n1 < 0 || t.n2 < 0) {
    throw std::invalid_argument("truncations must be >= 0");
  }
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t dim = 2;
  for (int cutoff : {t.n0, t.n1, t.n2}) {
    const auto levels = static_cast<std::size_t>(cutoff) + 1;
    if (levels == 0 || dim > kMax / levels) {
      throw std::length_error("Fock space dimension overflows the index type");
    }
    dim *= levels;
  }
  if (dim > cap) {
    throw std::length_error("Fock space dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(cap));
  }
  return dim;
}

}  // namespace

FockSpace::FockSpace(Truncation truncation, std::size_t dimension_cap)
    : truncation_(truncation), dim_(checked_dimension(truncation, dimension_cap)) {}

bool FockSpace::contains(const BasisState& s) const noexcept {
  return s.n0 >= 0 && s.n0 <= truncation_.n0 && s.n1 >= 0 && s.n1 <= truncation_.n1 && s.n2 >= 0 &&
         s.n2 <= truncation_.n2;
}

std::size_t FockSpace::index(const BasisState& s) const {
  if (!contains(s)) throw std::out_of_range(to_string(s) + " lies outside the truncated space");
  const std::size_t l0 = truncation_.n0 + 1, l1 = truncation_.n1 + 1, l2 = truncation_.n2 + 1;
  const std::size_t dot = s.excited() ? 1 : 0;
  return ((dot * l0 + s.n0) * l1 + s.n1) * l2 + s.n2;
}

BasisState FockSpace::state(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("basis index " + std::to_string(index) + " >= dim");
  const std::size_t l0 = truncation_.n0 + 1, l1 = truncation_.n1 + 1, l2 = truncation_.n2 + 1;
  BasisState s;
  s.n2 = static_cast<int>(index % l2);
  index /= l2;
  s.n1 = static_cast<int>(index % l1);
  index /= l1;
  s.n0 = static_cast<int>(index % l0);
  index /= l0;
  s.dot = index == 0 ? DotLevel::ground : DotLevel::excited;
  return s;
}

FockSpace build_space(int trunc0, int trunc1, int trunc2, std::size_t dimension_cap) {
  return FockSpace(Truncation{trunc0, trunc1, trunc2}, dimension_cap);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return {SparseMatrix(matrix.adjoint()), label + "^dag"};
}

namespace {

void set_occupation(BasisState& s, Mode mode, int n) {
  switch (mode) {
    case Mode::omega0: s.n0 = n; return;
    case Mode::omega1: s.n1 = n; return;
    case Mode::omega2: s.n2 = n; return;
  }
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::omega0: return "a0";
    case Mode::omega1: return "a1";
    case Mode::omega2: return "a2";
  }
  return "?";
}

}  // namespace

OperatorMatrix ladder(const FockSpace& space, Mode mode, Ladder kind) {
  const int m = static_cast<int>(mode);
  if (m < 0 || m > 2) throw std::invalid_argument("invalid mode " + std::to_string(m));

  const auto dim = static_cast<Index>(space.dim());
  std::vector<Triplet> entries;
  entries.reserve(space.dim());
  for (std::size_t col = 0; col < space.dim(); ++col) {
    BasisState target = space.state(col);
    const int n = target.occupation(mode);
    if (n == 0) continue;
    set_occupation(target, mode, n - 1);
    // <n-1| a |n> = sqrt(n)
    entries.emplace_back(static_cast<Index>(space.index(target)), static_cast<Index>(col),
                         Complex(std::sqrt(static_cast<double>(n)), 0.0));
  }
  OperatorMatrix lower{SparseMatrix(dim, dim), mode_name(mode)};
  lower.matrix.setFromTriplets(entries.begin(), entries.end());
  return kind == Ladder::lower ? lower : lower.adjoint();
}

OperatorMatrix dot_lowering(const FockSpace& space) {
  const auto dim = static_cast<Index>(space.dim());
  std::vector<Triplet> entries;
  for (std::size_t col = 0; col < space.dim(); ++col) {
    BasisState s = space.state(col);
    if (!s.excited()) continue;
    s.dot = DotLevel::ground;
    entries.emplace_back(static_cast<Index>(space.index(s)), static_cast<Index>(col), Complex(1.0, 0.0));
  }
  OperatorMatrix sigma{SparseMatrix(dim, dim), "sigma"};
  sigma.matrix.setFromTriplets(entries.begin(), entries.end());
  return sigma;
}

OperatorMatrix number_operator(const FockSpace& space, Mode mode) {
  const auto dim = static_cast<Index>(space.dim());
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const int n = space.state(i).occupation(mode);
    if (n != 0) entries.emplace_back(static_cast<Index>(i), static_cast<Index>(i), Complex(n, 0.0));
  }
  OperatorMatrix number{SparseMatrix(dim, dim), std::string("n_") + mode_name(mode)};
  number.matrix.setFromTriplets(entries.begin(), entries.end());
  return number;
}

}  // namespace triphoton

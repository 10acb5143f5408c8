// Copyright 2026 The hbqme Authors
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

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hbqme {

/// Product state |d>_dist |p>_prot |n>_phn.
///
/// d is the intermolecular distance label: 2 far apart, 1 critical distance,
/// 0 stretched (bond possible), -1 stable hydrogen bond. p is the proton
/// level and n the phonon count.
struct BasisState {
  int d = 0;
  int p = 0;
  int n = 0;

  auto operator<=>(const BasisState&) const = default;

  /// Column label used in CSV output, e.g. "d-1_p0_n1".
  std::string label() const;
};

enum class BasisMode { restricted, full };

std::string_view to_string(BasisMode mode);
BasisMode basis_mode_from_string(std::string_view name);

/// Whether s satisfies the restricted-mode selection rules for a given cap.
bool is_physical(const BasisState& s, int n_max);

/// Ordered, immutable set of basis states with O(1) state -> index lookup.
///
/// Restricted mode keeps the states reachable from |0,0,n_max> under the
/// Hamiltonian couplings and the jump operators (d = -1 => p = 0,
/// d in {1,2} => p = 1, p = 1 => n <= n_max - 1); its dimension is
/// 5 n_max + 2. Full mode is the 4 x 2 x (n_max + 1) tensor product.
/// States are sorted lexicographically on (d, p, n).
class Basis {
 public:
  static std::shared_ptr<const Basis> build(BasisMode mode, int n_max);

  BasisMode mode() const noexcept { return mode_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return states_.size(); }
  const std::vector<BasisState>& states() const noexcept { return states_; }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index(const BasisState& s) const;
  bool contains(const BasisState& s) const { return index(s).has_value(); }

  /// Two bases describe the same space (mode and cap agree).
  bool same_space(const Basis& other) const noexcept {
    return mode_ == other.mode_ && n_max_ == other.n_max_;
  }

 private:
  Basis(BasisMode mode, int n_max);

  std::size_t slot(const BasisState& s) const;

  BasisMode mode_;
  int n_max_;
  std::vector<BasisState> states_;
  // Dense lookup over the full label range; -1 marks absent states.
  std::vector<std::ptrdiff_t> lookup_;
};

using BasisPtr = std::shared_ptr<const Basis>;

}  // namespace hbqme

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

#include "hbqme/basis.hpp"

#include "hbqme/errors.hpp"

namespace hbqme {

std::string BasisState::label() const {
  return "d" + std::to_string(d) + "_p" + std::to_string(p) + "_n" + std::to_string(n);
}

std::string_view to_string(BasisMode mode) {
  return mode == BasisMode::restricted ? "restricted" : "full";
}

BasisMode basis_mode_from_string(std::string_view name) {
  if (name == "restricted") return BasisMode::restricted;
  if (name == "full") return BasisMode::full;
  throw DomainError("basis", "expected 'restricted' or 'full', got '" + std::string(name) + "'");
}

bool is_physical(const BasisState& s, int n_max) {
  if (s.d < -1 || s.d > 2 || s.p < 0 || s.p > 1 || s.n < 0 || s.n > n_max) return false;
  if (s.d == -1 && s.p != 0) return false;
  if (s.d >= 1 && s.p != 1) return false;
  if (s.p == 1 && s.n > n_max - 1) return false;
  return true;
}

std::shared_ptr<const Basis> Basis::build(BasisMode mode, int n_max) {
  if (mode == BasisMode::restricted && n_max < 1) {
    throw DomainError("n_max", "restricted basis needs n_max >= 1, got " + std::to_string(n_max));
  }
  if (n_max < 0) {
    throw DomainError("n_max", "must be non-negative, got " + std::to_string(n_max));
  }
  return std::shared_ptr<const Basis>(new Basis(mode, n_max));
}

Basis::Basis(BasisMode mode, int n_max) : mode_(mode), n_max_(n_max) {
  lookup_.assign(static_cast<std::size_t>(8 * (n_max + 1)), -1);
  for (int d = -1; d <= 2; ++d) {
    for (int p = 0; p <= 1; ++p) {
      for (int n = 0; n <= n_max; ++n) {
        const BasisState s{d, p, n};
        if (mode == BasisMode::restricted && !is_physical(s, n_max)) continue;
        lookup_[slot(s)] = static_cast<std::ptrdiff_t>(states_.size());
        states_.push_back(s);
      }
    }
  }
}

std::size_t Basis::slot(const BasisState& s) const {
  return static_cast<std::size_t>(((s.d + 1) * 2 + s.p) * (n_max_ + 1) + s.n);
}

std::optional<std::size_t> Basis::index(const BasisState& s) const {
  if (s.d < -1 || s.d > 2 || s.p < 0 || s.p > 1 || s.n < 0 || s.n > n_max_) return std::nullopt;
  const auto i = lookup_[slot(s)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

}  // namespace hbqme

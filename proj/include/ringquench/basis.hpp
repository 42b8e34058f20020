// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis.hpp
 * @brief Fixed-particle-number bosonic Fock bases on an L-site ring.
 *
 * A SpeciesBasis enumerates every occupation vector (n_0, ..., n_{L-1}) with
 * sum N in strictly decreasing lexicographic order. A ProductBasis pairs two
 * species bases with composite ordinal i_a * dim_b + i_b.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ringquench {

/// Atoms per site. Entries are 8-bit, so N <= 255.
using OccupationState = std::vector<std::uint8_t>;

struct OccupationHash {
  std::size_t operator()(const OccupationState& s) const noexcept;
};

inline constexpr std::size_t kDefaultBasisCap = std::size_t{1} << 31;
inline constexpr int kMaxAtoms = 255;

/// binomial(n, k); throws CapacityError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Number of occupation vectors of N bosons on L sites.
std::uint64_t fock_dimension(int sites, int atoms);

class SpeciesBasis {
 public:
  SpeciesBasis(int sites, int atoms, std::size_t cap = kDefaultBasisCap);

  int sites() const noexcept { return sites_; }
  int atoms() const noexcept { return atoms_; }
  std::size_t dim() const noexcept { return states_.size(); }

  const OccupationState& state(std::size_t k) const { return states_.at(k); }
  const std::vector<OccupationState>& states() const noexcept { return states_; }

  /// Ordinal of s; throws InvalidStateError if s has the wrong length or sum.
  std::size_t index(const OccupationState& s) const;
  std::optional<std::size_t> find(const OccupationState& s) const;

  /// Identifier used to check that vectors and operators live on this basis.
  std::string tag() const;

  /// Position of the Mott state (nu, ..., nu); empty when N is not a multiple of L.
  std::optional<std::size_t> mott_index() const;

 private:
  int sites_;
  int atoms_;
  std::vector<OccupationState> states_;
  std::unordered_map<OccupationState, std::size_t, OccupationHash> index_;
};

SpeciesBasis enumerate_basis(int sites, int atoms, std::size_t cap = kDefaultBasisCap);
std::size_t state_index(const SpeciesBasis& basis, const OccupationState& s);

class ProductBasis {
 public:
  ProductBasis(SpeciesBasis a, SpeciesBasis b, std::size_t cap = kDefaultBasisCap);

  const SpeciesBasis& a() const noexcept { return a_; }
  const SpeciesBasis& b() const noexcept { return b_; }
  std::size_t dim() const noexcept { return a_.dim() * b_.dim(); }
  int sites() const noexcept { return a_.sites(); }

  std::size_t index(std::size_t ia, std::size_t ib) const noexcept { return ia * b_.dim() + ib; }
  std::pair<std::size_t, std::size_t> split(std::size_t k) const noexcept {
    return {k / b_.dim(), k % b_.dim()};
  }
  std::string tag() const;

 private:
  SpeciesBasis a_;
  SpeciesBasis b_;
};

}  // namespace ringquench

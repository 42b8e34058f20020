// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/basis.hpp"

#include <limits>
#include <numeric>

#include "ringquench/errors.hpp"

namespace ringquench {

std::size_t OccupationHash::operator()(const OccupationState& s) const noexcept {
  // FNV-1a over the occupation bytes
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t n : s) {
    h ^= n;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t r_red = r / g;
    const std::uint64_t den = i / g;
    if (r_red > std::numeric_limits<std::uint64_t>::max() / num) {
      throw CapacityError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") overflows 64 bits");
    }
    r = r_red * num / den;
  }
  return r;
}

std::uint64_t fock_dimension(int sites, int atoms) {
  if (sites < 1) throw ContractError("fock_dimension: L must be >= 1");
  if (atoms < 0) throw ContractError("fock_dimension: N must be >= 0");
  return binomial(static_cast<std::uint64_t>(atoms + sites - 1),
                  static_cast<std::uint64_t>(sites - 1));
}

namespace {

void enumerate_into(int site, int remaining, OccupationState& current,
                    std::vector<OccupationState>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (site == last) {
    current[site] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[site] = static_cast<std::uint8_t>(n);
    enumerate_into(site + 1, remaining - n, current, out);
  }
}

}  // namespace

SpeciesBasis::SpeciesBasis(int sites, int atoms, std::size_t cap) : sites_(sites), atoms_(atoms) {
  if (sites < 1) throw ContractError("basis: L must be >= 1, got " + std::to_string(sites));
  if (atoms < 0) throw ContractError("basis: N must be >= 0, got " + std::to_string(atoms));
  if (atoms > kMaxAtoms) {
    throw CapacityError("basis: N = " + std::to_string(atoms) + " exceeds 8-bit occupations");
  }
  const std::uint64_t dim = fock_dimension(sites, atoms);
  if (dim > cap) {
    throw CapacityError("basis: dimension " + std::to_string(dim) + " for L=" +
                        std::to_string(sites) + ", N=" + std::to_string(atoms) +
                        " exceeds cap " + std::to_string(cap));
  }
  states_.reserve(dim);
  OccupationState current(static_cast<std::size_t>(sites), 0);
  enumerate_into(0, atoms, current, states_);
  index_.reserve(dim);
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k], k);
}

std::optional<std::size_t> SpeciesBasis::find(const OccupationState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SpeciesBasis::index(const OccupationState& s) const {
  if (static_cast<int>(s.size()) != sites_) {
    throw InvalidStateError("state_index: occupation vector has length " +
                            std::to_string(s.size()) + ", basis has L=" + std::to_string(sites_));
  }
  int sum = 0;
  for (auto n : s) sum += n;
  if (sum != atoms_) {
    throw InvalidStateError("state_index: occupation vector sums to " + std::to_string(sum) +
                            ", basis has N=" + std::to_string(atoms_));
  }
  return index_.at(s);
}

std::string SpeciesBasis::tag() const {
  return "L" + std::to_string(sites_) + "N" + std::to_string(atoms_);
}

std::optional<std::size_t> SpeciesBasis::mott_index() const {
  if (atoms_ % sites_ != 0) return std::nullopt;
  return index(OccupationState(static_cast<std::size_t>(sites_),
                               static_cast<std::uint8_t>(atoms_ / sites_)));
}

SpeciesBasis enumerate_basis(int sites, int atoms, std::size_t cap) {
  return SpeciesBasis(sites, atoms, cap);
}

std::size_t state_index(const SpeciesBasis& basis, const OccupationState& s) {
  return basis.index(s);
}

ProductBasis::ProductBasis(SpeciesBasis a, SpeciesBasis b, std::size_t cap)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.sites() != b_.sites()) {
    throw ContractError("product basis: species live on rings of different size");
  }
  const std::uint64_t da = a_.dim(), db = b_.dim();
  if (db != 0 && da > cap / db) {
    throw CapacityError("product basis: dimension " + std::to_string(da) + " x " +
                        std::to_string(db) + " exceeds cap " + std::to_string(cap));
  }
}

std::string ProductBasis::tag() const { return a_.tag() + "x" + b_.tag(); }

}  // namespace ringquench

// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/state.hpp"

#include "ringquench/errors.hpp"

namespace ringquench {

StateVector normalized(StateVector psi) {
  const double n = psi.amplitudes.norm();
  if (!(n > 0.0)) throw ContractError("normalized: zero vector");
  psi.amplitudes /= n;
  psi.normalized = true;
  return psi;
}

StateVector tensor_product(const StateVector& psi_a, const StateVector& psi_b,
                           const std::string& product_tag) {
  const Eigen::Index da = psi_a.amplitudes.size(), db = psi_b.amplitudes.size();
  StateVector out{ComplexVector(da * db), product_tag, psi_a.normalized && psi_b.normalized};
  for (Eigen::Index i = 0; i < da; ++i) {
    out.amplitudes.segment(i * db, db) = psi_a.amplitudes(i) * psi_b.amplitudes;
  }
  return out;
}

StateVector basis_state(std::size_t dim, std::size_t k, const std::string& tag) {
  if (k >= dim) throw ContractError("basis_state: index out of range");
  StateVector out{ComplexVector::Zero(static_cast<Eigen::Index>(dim)), tag, true};
  out.amplitudes(static_cast<Eigen::Index>(k)) = 1.0;
  return out;
}

}  // namespace ringquench

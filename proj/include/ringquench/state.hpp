// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace ringquench {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Complex amplitudes over a species basis or a product basis.
struct StateVector {
  ComplexVector amplitudes;
  std::string basis_tag;
  bool normalized = false;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

/// Returns psi scaled to unit norm and tagged as normalized.
StateVector normalized(StateVector psi);

/// Product state psi_a (x) psi_b in the composite ordering i_a * dim_b + i_b.
StateVector tensor_product(const StateVector& psi_a, const StateVector& psi_b,
                           const std::string& product_tag);

/// Basis vector |k>.
StateVector basis_state(std::size_t dim, std::size_t k, const std::string& tag);

}  // namespace ringquench

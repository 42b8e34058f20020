// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file operators.hpp
 * @brief Bose-Hubbard Hamiltonians, interspecies coupling and current operator
 * on a ring with Peierls phases, stored as sparse Hermitian CSR matrices.
 *
 * Conventions: hbar = 1, energies in units of U_B. Site L is identified with
 * site 0. The hopping term of one species reads
 *   -J sum_j ( e^{i phi} b_{j+1}^dag b_j + h.c. ).
 */

#pragma once

#include <Eigen/Sparse>
#include <string>

#include "ringquench/basis.hpp"
#include "ringquench/state.hpp"

namespace ringquench {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

struct SingleSpeciesParams {
  double J = 0.0;
  double U = 1.0;
  double phi = 0.0;
  int L = 0;
  int N = 0;

  double lambda() const noexcept { return J / U; }
  /// Filling N / L; only meaningful when L divides N.
  int filling() const noexcept { return L > 0 ? N / L : 0; }
  /// Throws ContractError unless U > 0, J >= 0, L >= 3, 0 <= N <= 255.
  void validate() const;
};

/// Parameters of an interspecies quench from the product of single-species ground states.
struct QuenchScenario {
  SingleSpeciesParams a;
  SingleSpeciesParams b;
  double V = 0.0;
  double dt = 0.002;
  double t_max = 0.0;
  int sample_stride = 10;

  void validate() const;
};

class SparseHermitianOperator {
 public:
  SparseHermitianOperator() = default;
  SparseHermitianOperator(SparseMatrix m, std::string basis_tag);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const SparseMatrix& matrix() const noexcept { return m_; }
  const std::string& basis_tag() const noexcept { return tag_; }

  ComplexVector apply(const ComplexVector& v) const;
  /// <v|M|v> without normalization.
  Complex expectation(const ComplexVector& v) const;

  /// max |M - M^dag| / max |M| (0 for the zero operator).
  double hermiticity_residual() const;
  /// Upper bound on the spectral norm: largest absolute row sum.
  double norm_bound() const;
  ComplexMatrix to_dense() const;
  RealVector diagonal() const;

 private:
  SparseMatrix m_;
  std::string tag_;
};

/// Hopping part -J sum_j (e^{i phi} b_{j+1}^dag b_j + h.c.).
SparseHermitianOperator build_kinetic(const SpeciesBasis& basis, double J, double phi);
/// Diagonal of (U/2) sum_j n_j (n_j - 1).
RealVector onsite_interaction_diagonal(const SpeciesBasis& basis, double U);

SparseHermitianOperator build_bose_hubbard(const SingleSpeciesParams& p, const SpeciesBasis& basis);

/// Diagonal of -V sum_j n^A_j n^B_j over the product basis.
RealVector interaction_coupling_diagonal(const ProductBasis& pb, double V);
SparseHermitianOperator build_interaction_coupling(const ProductBasis& pb, double V);

/// H_A (x) 1 + 1 (x) H_B - V sum_j n^A_j n^B_j.
SparseHermitianOperator build_total_hamiltonian(const QuenchScenario& sc, const ProductBasis& pb);

/// (1 / 2iL) sum_j ( b_{j+1}^dag b_j e^{i phi} - h.c. ).
SparseHermitianOperator build_current_operator(const SpeciesBasis& basis, double phi);

/// Identity operator over a basis of the given dimension.
SparseHermitianOperator identity_operator(std::size_t dim, const std::string& tag);

/// M v with tag and dimension checks; no normalization.
StateVector apply(const SparseHermitianOperator& op, const StateVector& v);

}  // namespace ringquench

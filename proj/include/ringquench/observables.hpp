// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file observables.hpp
 * @brief Currents, momentum distribution and visibility, reduced density
 * matrices, purity, shifted Schmidt number, Renyi-2 entropy and eigenbasis
 * probabilities.
 */

#pragma once

#include <utility>
#include <vector>

#include "ringquench/basis.hpp"
#include "ringquench/operators.hpp"
#include "ringquench/solvers.hpp"
#include "ringquench/state.hpp"

namespace ringquench {

enum class Species { A, B };

/// Real <psi|I|psi>; an imaginary part above 1e-8 raises IntegrityError.
double current_expectation(const StateVector& psi, const SparseHermitianOperator& current);

/// Expectation of a single-species operator acting on one factor of a product-basis state.
double species_expectation(const StateVector& psi_ab, const ProductBasis& pb,
                           const SparseHermitianOperator& op, Species which);

/// (i0 - it) / i0; |i0| <= 1e-12 raises UndefinedBaselineError.
double relative_current_variation(double i0, double it);

/// One-body correlations C_ij = <b_i^dag b_j>.
ComplexMatrix one_body_correlations(const StateVector& psi, const SpeciesBasis& basis);

struct MomentumDistribution {
  std::vector<double> q_grid;
  std::vector<double> values;
  double s_max = 0.0, q_max = 0.0;
  double s_min = 0.0, q_min = 0.0;
};

/// S(q) = sum_ij e^{iq(i-j)} C_ij evaluated from a correlation matrix.
double momentum_value(const ComplexMatrix& corr, double q);

/// S(q) on a uniform grid over [0, 2pi) (grid_points = 0 selects 512 L) with
/// golden-section refinement of both extrema to 1e-10 in q.
MomentumDistribution momentum_distribution(const StateVector& psi, const SpeciesBasis& basis,
                                           int grid_points = 0);
MomentumDistribution momentum_distribution(const ComplexMatrix& corr, int grid_points = 0);

/// (S_max - S_min) / (S_max + S_min).
double visibility(const MomentumDistribution& md);

/// Reduced density matrix of the chosen species.
ComplexMatrix reduced_density_matrix(const StateVector& psi_ab, const ProductBasis& pb, Species which);

struct EntanglementRecord {
  double purity_a = 1.0;
  double purity_b = 1.0;
  double schmidt_shifted = 0.0;
  double renyi2 = 0.0;
};

EntanglementRecord entanglement_record(const StateVector& psi_ab, const ProductBasis& pb);

struct EigenProbability {
  double energy;
  double probability;
};

/// p_i = |<Phi_i|psi>|^2 paired with E_i, ascending in energy.
std::vector<EigenProbability> eigenbasis_probabilities(const StateVector& psi,
                                                       const EigenDecomposition& eig);

}  // namespace ringquench

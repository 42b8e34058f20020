// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solvers.hpp
 * @brief Ground states (Lanczos) and full spectra (dense) of Hermitian operators.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "ringquench/operators.hpp"
#include "ringquench/state.hpp"

namespace ringquench {

struct LanczosOptions {
  int max_iterations = 10000;  ///< total matrix-vector products across restarts
  int krylov_dim = 200;        ///< Krylov vectors kept before an explicit restart
  double tolerance = 1e-12;    ///< on the Ritz residual, relative to max(1, |H|)
  std::uint64_t seed = 0x5eedf00dULL;
};

struct Eigenpair {
  double value = 0.0;
  ComplexVector vector;
  double residual = 0.0;  ///< |H x - value x|
  int iterations = 0;
};

/// The `count` lowest eigenpairs, found one at a time by Lanczos with full
/// reorthogonalization and deflation against the pairs already converged.
/// Degenerate eigenvalues appear with their multiplicity.
std::vector<Eigenpair> lowest_eigenpairs(const SparseHermitianOperator& op, int count,
                                         const LanczosOptions& opts = {});

struct GroundState {
  double energy = 0.0;
  StateVector state;
  bool degenerate = false;  ///< gap to the next level below 1e-10 |H|
  double gap = 0.0;         ///< E_1 - E_0 (0 for a one-dimensional space)
  double residual = 0.0;
};

/// Lowest eigenpair; the largest-magnitude amplitude is made real positive.
GroundState ground_state(const SparseHermitianOperator& op, const LanczosOptions& opts = {});

struct EigenDecomposition {
  RealVector eigenvalues;      ///< ascending
  ComplexMatrix eigenvectors;  ///< column i pairs with eigenvalues(i)
  std::string basis_tag;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  StateVector vector(std::size_t i) const;
};

inline constexpr std::size_t kDefaultDenseCap = 20000;

/// All eigenpairs through a dense Hermitian eigensolver.
EigenDecomposition full_spectrum(const SparseHermitianOperator& op,
                                 std::size_t dense_cap = kDefaultDenseCap);

/// Phase convention shared by all solvers: largest |x_i| becomes real positive.
void fix_global_phase(ComplexVector& x);

}  // namespace ringquench

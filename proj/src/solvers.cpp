// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ringquench/errors.hpp"

namespace ringquench {

void fix_global_phase(ComplexVector& x) {
  if (x.size() == 0) return;
  Eigen::Index best = 0;
  x.cwiseAbs().maxCoeff(&best);
  const double mag = std::abs(x(best));
  if (mag > 0.0) x *= std::conj(x(best)) / mag;
}

namespace {

// Removes the components along every vector in `basis` (two Gram-Schmidt passes).
void orthogonalize(ComplexVector& w, const std::vector<ComplexVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) w -= q.dot(w) * q;
  }
}

ComplexVector random_start(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

// Lowest eigenpair of op restricted to the orthogonal complement of `locked`.
Eigenpair lanczos_lowest(const SparseHermitianOperator& op, const std::vector<ComplexVector>& locked,
                         const LanczosOptions& opts, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  const double scale = std::max(1.0, op.norm_bound());
  const double tol = opts.tolerance * scale;
  const double breakdown = 1e3 * std::numeric_limits<double>::epsilon() * scale;

  ComplexVector v = random_start(n, rng);
  orthogonalize(v, locked);
  double vn = v.norm();
  if (vn <= 0.0) throw SolverError("lanczos: start vector lies in the deflated space", 0.0);
  v /= vn;

  int total = 0;
  double last_residual = std::numeric_limits<double>::infinity();
  const int kmax = static_cast<int>(std::min<Eigen::Index>(opts.krylov_dim, n));

  while (total < opts.max_iterations) {
    std::vector<ComplexVector> krylov;
    krylov.reserve(static_cast<std::size_t>(kmax) + 1);
    krylov.push_back(v);
    std::vector<double> alpha, beta;

    Eigen::VectorXd ritz_coeffs;
    double theta = 0.0;

    for (int m = 0; m < kmax && total < opts.max_iterations; ++m) {
      ComplexVector w = op.apply(krylov[static_cast<std::size_t>(m)]);
      ++total;
      const double a = krylov[static_cast<std::size_t>(m)].dot(w).real();
      alpha.push_back(a);
      orthogonalize(w, krylov);
      orthogonalize(w, locked);
      const double b = w.norm();

      const int k = m + 1;
      const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
      const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()(0);
      ritz_coeffs = tri.eigenvectors().col(0);
      last_residual = b * std::abs(ritz_coeffs(k - 1));

      if (last_residual <= tol || b <= breakdown || m + 1 == kmax) break;
      beta.push_back(b);
      krylov.push_back(w / b);
    }

    ComplexVector x = ComplexVector::Zero(n);
    for (Eigen::Index i = 0; i < ritz_coeffs.size(); ++i) {
      x += ritz_coeffs(i) * krylov[static_cast<std::size_t>(i)];
    }
    orthogonalize(x, locked);
    x.normalize();
    const double true_residual = (op.apply(x) - theta * x).norm();
    last_residual = true_residual;
    if (true_residual <= 10.0 * tol) {
      return Eigenpair{theta, std::move(x), true_residual, total};
    }
    // explicit restart from the current Ritz vector
    v = std::move(x);
  }
  throw SolverError("lanczos: no convergence after " + std::to_string(total) +
                        " iterations, last residual " + std::to_string(last_residual),
                    last_residual);
}

}  // namespace

std::vector<Eigenpair> lowest_eigenpairs(const SparseHermitianOperator& op, int count,
                                         const LanczosOptions& opts) {
  const auto n = static_cast<int>(op.dim());
  if (n < 1) throw ContractError("eigensolver: empty operator");
  if (count < 1 || count > n) {
    throw ContractError("eigensolver: requested " + std::to_string(count) + " pairs of a dim-" +
                        std::to_string(n) + " operator");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<Eigenpair> pairs;
  std::vector<ComplexVector> locked;
  for (int k = 0; k < count; ++k) {
    Eigenpair p = lanczos_lowest(op, locked, opts, rng);
    locked.push_back(p.vector);
    pairs.push_back(std::move(p));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& x, const Eigenpair& y) { return x.value < y.value; });
  return pairs;
}

GroundState ground_state(const SparseHermitianOperator& op, const LanczosOptions& opts) {
  const std::size_t n = op.dim();
  if (n < 1) throw ContractError("ground_state: empty operator");
  GroundState gs;
  if (n == 1) {
    gs.energy = op.matrix().coeff(0, 0).real();
    gs.state = StateVector{ComplexVector::Ones(1), op.basis_tag(), true};
    return gs;
  }
  // The second pair only serves the degeneracy check.
  std::vector<Eigenpair> pairs = lowest_eigenpairs(op, 2, opts);
  Eigenpair& lowest = pairs.front();
  gs.energy = lowest.value;
  gs.gap = pairs[1].value - pairs[0].value;
  gs.degenerate = gs.gap < 1e-10 * std::max(1.0, op.norm_bound());
  gs.residual = lowest.residual;
  fix_global_phase(lowest.vector);
  gs.state = StateVector{std::move(lowest.vector), op.basis_tag(), true};
  return gs;
}

StateVector EigenDecomposition::vector(std::size_t i) const {
  return StateVector{eigenvectors.col(static_cast<Eigen::Index>(i)), basis_tag, true};
}

EigenDecomposition full_spectrum(const SparseHermitianOperator& op, std::size_t dense_cap) {
  if (op.dim() > dense_cap) {
    throw CapacityError("full_spectrum: dimension " + std::to_string(op.dim()) +
                        " exceeds dense cap " + std::to_string(dense_cap));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.to_dense());
  if (solver.info() != Eigen::Success) {
    throw SolverError("full_spectrum: dense eigensolver failed", std::numeric_limits<double>::quiet_NaN());
  }
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.basis_tag = op.basis_tag();
  return out;
}

}  // namespace ringquench

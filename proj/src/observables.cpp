// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ringquench/dynamics.hpp"
#include "ringquench/errors.hpp"

namespace ringquench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ProductAmplitudes amplitude_matrix(const StateVector& psi_ab, const ProductBasis& pb) {
  if (psi_ab.dim() != pb.dim()) {
    throw ContractError("state dimension " + std::to_string(psi_ab.dim()) + " does not match " +
                        pb.tag());
  }
  return Eigen::Map<const ProductAmplitudes>(psi_ab.amplitudes.data(),
                                             static_cast<Eigen::Index>(pb.a().dim()),
                                             static_cast<Eigen::Index>(pb.b().dim()));
}

double checked_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-8) {
    std::ostringstream os;
    os << what << ": imaginary part " << z.imag() << " of a Hermitian expectation";
    throw IntegrityError(os.str());
  }
  return z.real();
}

// c_d = sum_{i-j=d} C_ij stored at offset d + L - 1.
std::vector<Complex> diagonal_sums(const ComplexMatrix& corr) {
  const auto L = corr.rows();
  std::vector<Complex> c(static_cast<std::size_t>(2 * L - 1), Complex(0.0, 0.0));
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) c[static_cast<std::size_t>(i - j + L - 1)] += corr(i, j);
  }
  return c;
}

double eval_sums(const std::vector<Complex>& c, double q) {
  const auto offset = static_cast<long>(c.size() / 2);
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double d = static_cast<double>(static_cast<long>(k) - offset);
    s += (std::polar(1.0, q * d) * c[k]).real();
  }
  return s;
}

// Golden-section search for the maximum of sign * f on [lo, hi].
template <typename F>
std::pair<double, double> golden_extremum(F&& f, double lo, double hi, double sign) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = sign * f(x1), f2 = sign * f(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = sign * f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = sign * f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace

double current_expectation(const StateVector& psi, const SparseHermitianOperator& current) {
  return checked_real(current.expectation(psi.amplitudes), "current_expectation");
}

double species_expectation(const StateVector& psi_ab, const ProductBasis& pb,
                           const SparseHermitianOperator& op, Species which) {
  const ProductAmplitudes m = amplitude_matrix(psi_ab, pb);
  const std::size_t dim = which == Species::A ? pb.a().dim() : pb.b().dim();
  if (op.dim() != dim) throw ContractError("species_expectation: operator dimension mismatch");
  ProductAmplitudes y;
  if (which == Species::A) {
    y = op.matrix() * m;
  } else {
    y = m * op.matrix().transpose();
  }
  return checked_real(m.conjugate().cwiseProduct(y).sum(), "species_expectation");
}

double relative_current_variation(double i0, double it) {
  if (std::abs(i0) <= 1e-12) {
    throw UndefinedBaselineError("relative current variation is undefined for a vanishing initial current");
  }
  return (i0 - it) / i0;
}

ComplexMatrix one_body_correlations(const StateVector& psi, const SpeciesBasis& basis) {
  if (psi.dim() != basis.dim()) throw ContractError("one_body_correlations: dimension mismatch");
  const int L = basis.sites();
  ComplexMatrix c = ComplexMatrix::Zero(L, L);
  OccupationState scratch;
  for (std::size_t s = 0; s < basis.dim(); ++s) {
    const Complex amp_s = psi.amplitudes(static_cast<Eigen::Index>(s));
    if (amp_s == Complex(0.0, 0.0)) continue;
    const OccupationState& occ = basis.state(s);
    for (int j = 0; j < L; ++j) {
      if (occ[j] == 0) continue;
      c(j, j) += static_cast<double>(occ[j]) * std::norm(amp_s);
      for (int i = 0; i < L; ++i) {
        if (i == j) continue;
        scratch = occ;
        scratch[j] -= 1;
        scratch[i] += 1;
        const double me = std::sqrt(static_cast<double>(occ[j]) * (occ[i] + 1.0));
        const Complex amp_t = psi.amplitudes(static_cast<Eigen::Index>(basis.index(scratch)));
        c(i, j) += std::conj(amp_t) * amp_s * me;
      }
    }
  }
  return c;
}

double momentum_value(const ComplexMatrix& corr, double q) { return eval_sums(diagonal_sums(corr), q); }

MomentumDistribution momentum_distribution(const ComplexMatrix& corr, int grid_points) {
  const auto L = static_cast<int>(corr.rows());
  const int n = grid_points > 0 ? grid_points : 512 * L;
  const std::vector<Complex> sums = diagonal_sums(corr);
  auto s = [&sums](double q) { return eval_sums(sums, q); };

  MomentumDistribution md;
  md.q_grid.resize(static_cast<std::size_t>(n));
  md.values.resize(static_cast<std::size_t>(n));
  std::size_t imax = 0, imin = 0;
  for (int k = 0; k < n; ++k) {
    const double q = kTwoPi * k / n;
    md.q_grid[static_cast<std::size_t>(k)] = q;
    md.values[static_cast<std::size_t>(k)] = s(q);
    if (md.values[static_cast<std::size_t>(k)] > md.values[imax]) imax = static_cast<std::size_t>(k);
    if (md.values[static_cast<std::size_t>(k)] < md.values[imin]) imin = static_cast<std::size_t>(k);
  }
  const double h = kTwoPi / n;
  auto [qmax, smax] = golden_extremum(s, md.q_grid[imax] - h, md.q_grid[imax] + h, 1.0);
  auto [qmin, smin] = golden_extremum(s, md.q_grid[imin] - h, md.q_grid[imin] + h, -1.0);
  // Refinement never loses to the grid point it started from.
  md.s_max = std::max(smax, md.values[imax]);
  md.q_max = smax >= md.values[imax] ? std::fmod(qmax + kTwoPi, kTwoPi) : md.q_grid[imax];
  md.s_min = std::min(smin, md.values[imin]);
  md.q_min = smin <= md.values[imin] ? std::fmod(qmin + kTwoPi, kTwoPi) : md.q_grid[imin];
  return md;
}

MomentumDistribution momentum_distribution(const StateVector& psi, const SpeciesBasis& basis,
                                           int grid_points) {
  return momentum_distribution(one_body_correlations(psi, basis), grid_points);
}

double visibility(const MomentumDistribution& md) {
  const double denom = md.s_max + md.s_min;
  if (!(denom > 0.0)) throw ContractError("visibility: degenerate momentum distribution");
  return (md.s_max - md.s_min) / denom;
}

ComplexMatrix reduced_density_matrix(const StateVector& psi_ab, const ProductBasis& pb, Species which) {
  const ProductAmplitudes m = amplitude_matrix(psi_ab, pb);
  ComplexMatrix rho;
  if (which == Species::A) {
    rho = m * m.adjoint();
  } else {
    rho = (m.adjoint() * m).transpose();
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "reduced density matrix has trace " << tr;
    throw IntegrityError(os.str());
  }
  return rho;
}

EntanglementRecord entanglement_record(const StateVector& psi_ab, const ProductBasis& pb) {
  const ProductAmplitudes m = amplitude_matrix(psi_ab, pb);
  const ComplexMatrix ga = m * m.adjoint();
  const ComplexMatrix gb = m.adjoint() * m;
  const double tr = ga.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "reduced density matrix has trace " << tr;
    throw IntegrityError(os.str());
  }
  EntanglementRecord r;
  r.purity_a = ga.squaredNorm();
  r.purity_b = gb.squaredNorm();
  r.schmidt_shifted = 1.0 / r.purity_a - 1.0;
  r.renyi2 = -std::log(r.purity_a);
  return r;
}

std::vector<EigenProbability> eigenbasis_probabilities(const StateVector& psi,
                                                       const EigenDecomposition& eig) {
  if (psi.dim() != eig.size()) throw ContractError("eigenbasis_probabilities: dimension mismatch");
  const ComplexVector c = eig.eigenvectors.adjoint() * psi.amplitudes;
  std::vector<EigenProbability> out(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out[i] = EigenProbability{eig.eigenvalues(k), std::norm(c(k))};
  }
  return out;
}

}  // namespace ringquench

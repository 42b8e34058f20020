// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ringquench/errors.hpp"

namespace ringquench {

using Triplet = Eigen::Triplet<Complex>;

void SingleSpeciesParams::validate() const {
  if (L == 2) {
    throw ContractError("L = 2 is not a ring: bonds 0->1 and 1->0 coincide");
  }
  if (L < 3) throw ContractError("ring needs L >= 3 sites, got " + std::to_string(L));
  if (N < 0 || N > kMaxAtoms) throw ContractError("atom number out of range: " + std::to_string(N));
  if (!(U > 0.0)) {
    throw ContractError("intra-species interaction must be repulsive (U > 0), got " +
                        std::to_string(U));
  }
  if (!(J >= 0.0)) throw ContractError("tunneling energy must be >= 0, got " + std::to_string(J));
  if (!std::isfinite(phi)) throw ContractError("Peierls phase must be finite");
}

void QuenchScenario::validate() const {
  a.validate();
  b.validate();
  if (a.L != b.L) throw ContractError("species must share the ring: L_A != L_B");
  if (!(V > 0.0)) throw ContractError("interspecies coupling must satisfy V > 0");
  if (!(dt > 0.0)) throw ContractError("time step must satisfy dt > 0");
  if (!(t_max > 0.0)) throw ContractError("horizon must satisfy t_max > 0");
  if (sample_stride < 1) throw ContractError("sample_stride must be >= 1");
}

SparseHermitianOperator::SparseHermitianOperator(SparseMatrix m, std::string basis_tag)
    : m_(std::move(m)), tag_(std::move(basis_tag)) {
  if (m_.rows() != m_.cols()) throw ContractError("operator matrix must be square");
  m_.makeCompressed();
}

ComplexVector SparseHermitianOperator::apply(const ComplexVector& v) const {
  if (v.size() != m_.cols()) {
    throw ContractError("apply: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                        std::to_string(m_.cols()) + ")");
  }
  return m_ * v;
}

Complex SparseHermitianOperator::expectation(const ComplexVector& v) const {
  return v.dot(apply(v));
}

double SparseHermitianOperator::hermiticity_residual() const {
  const SparseMatrix adj = m_.adjoint();
  const SparseMatrix diff = m_ - adj;
  double max_m = 0.0, max_d = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) max_m = std::max(max_m, std::abs(it.value()));
  }
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) max_d = std::max(max_d, std::abs(it.value()));
  }
  return max_m > 0.0 ? max_d / max_m : 0.0;
}

double SparseHermitianOperator::norm_bound() const {
  double best = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

ComplexMatrix SparseHermitianOperator::to_dense() const { return ComplexMatrix(m_); }

RealVector SparseHermitianOperator::diagonal() const { return m_.diagonal().real(); }

namespace {

// Calls emit(target, source, amplitude) for every forward hop b_{j+1}^dag b_j
// acting on every basis state.
template <typename Emit>
void for_each_forward_hop(const SpeciesBasis& basis, Emit&& emit) {
  const int L = basis.sites();
  OccupationState scratch;
  for (std::size_t s = 0; s < basis.dim(); ++s) {
    const OccupationState& occ = basis.state(s);
    for (int j = 0; j < L; ++j) {
      const int jp = (j + 1) % L;
      if (occ[j] == 0 || jp == j) continue;
      scratch = occ;
      const double amp = std::sqrt(static_cast<double>(occ[j]) * (occ[jp] + 1.0));
      scratch[j] -= 1;
      scratch[jp] += 1;
      emit(basis.index(scratch), s, amp);
    }
  }
}

void check_ring(const SpeciesBasis& basis) {
  if (basis.sites() == 2) {
    throw ContractError("L = 2 is not a ring: bonds 0->1 and 1->0 coincide");
  }
  if (basis.sites() < 3) throw ContractError("ring operators need L >= 3");
}

SparseHermitianOperator hopping_operator(const SpeciesBasis& basis, Complex forward) {
  check_ring(basis);
  std::vector<Triplet> trip;
  trip.reserve(2 * basis.dim() * static_cast<std::size_t>(basis.sites()));
  // Forward hop plus its conjugate mirror: exactly Hermitian by construction.
  for_each_forward_hop(basis, [&](std::size_t t, std::size_t s, double amp) {
    const Complex v = forward * amp;
    trip.emplace_back(static_cast<int>(t), static_cast<int>(s), v);
    trip.emplace_back(static_cast<int>(s), static_cast<int>(t), std::conj(v));
  });
  const int n = static_cast<int>(basis.dim());
  SparseMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return SparseHermitianOperator(std::move(m), basis.tag());
}

SparseMatrix diagonal_matrix(const RealVector& d) {
  const int n = static_cast<int>(d.size());
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, Complex(d(i), 0.0));
  SparseMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

void check_matches(const SingleSpeciesParams& p, const SpeciesBasis& basis) {
  if (p.L != basis.sites() || p.N != basis.atoms()) {
    throw ContractError("parameters (L=" + std::to_string(p.L) + ", N=" + std::to_string(p.N) +
                        ") do not match basis " + basis.tag());
  }
}

}  // namespace

SparseHermitianOperator build_kinetic(const SpeciesBasis& basis, double J, double phi) {
  return hopping_operator(basis, -J * std::polar(1.0, phi));
}

RealVector onsite_interaction_diagonal(const SpeciesBasis& basis, double U) {
  RealVector d(static_cast<Eigen::Index>(basis.dim()));
  for (std::size_t s = 0; s < basis.dim(); ++s) {
    double e = 0.0;
    for (auto n : basis.state(s)) e += static_cast<double>(n) * (n - 1.0);
    d(static_cast<Eigen::Index>(s)) = 0.5 * U * e;
  }
  return d;
}

SparseHermitianOperator build_bose_hubbard(const SingleSpeciesParams& p, const SpeciesBasis& basis) {
  p.validate();
  check_matches(p, basis);
  const SparseHermitianOperator k = build_kinetic(basis, p.J, p.phi);
  SparseMatrix m = k.matrix() + diagonal_matrix(onsite_interaction_diagonal(basis, p.U));
  return SparseHermitianOperator(std::move(m), basis.tag());
}

RealVector interaction_coupling_diagonal(const ProductBasis& pb, double V) {
  const std::size_t da = pb.a().dim(), db = pb.b().dim();
  const int L = pb.sites();
  RealVector d(static_cast<Eigen::Index>(da * db));
  for (std::size_t ia = 0; ia < da; ++ia) {
    const OccupationState& na = pb.a().state(ia);
    for (std::size_t ib = 0; ib < db; ++ib) {
      const OccupationState& nb = pb.b().state(ib);
      int overlap = 0;
      for (int j = 0; j < L; ++j) overlap += na[j] * nb[j];
      d(static_cast<Eigen::Index>(pb.index(ia, ib))) = -V * overlap;
    }
  }
  return d;
}

SparseHermitianOperator build_interaction_coupling(const ProductBasis& pb, double V) {
  if (!(V > 0.0)) throw ContractError("interspecies coupling must satisfy V > 0");
  return SparseHermitianOperator(diagonal_matrix(interaction_coupling_diagonal(pb, V)), pb.tag());
}

SparseHermitianOperator build_total_hamiltonian(const QuenchScenario& sc, const ProductBasis& pb) {
  sc.a.validate();
  sc.b.validate();
  if (!(sc.V >= 0.0)) throw ContractError("interspecies coupling must satisfy V >= 0");
  check_matches(sc.a, pb.a());
  check_matches(sc.b, pb.b());
  const std::size_t da = pb.a().dim(), db = pb.b().dim();
  if (da * db > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw CapacityError("total Hamiltonian: product dimension exceeds sparse index range");
  }

  const SparseHermitianOperator ka = build_kinetic(pb.a(), sc.a.J, sc.a.phi);
  const SparseHermitianOperator kb = build_kinetic(pb.b(), sc.b.J, sc.b.phi);

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(ka.matrix().nonZeros()) * db +
               static_cast<std::size_t>(kb.matrix().nonZeros()) * da + da * db);
  for (int r = 0; r < ka.matrix().outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(ka.matrix(), r); it; ++it) {
      for (std::size_t ib = 0; ib < db; ++ib) {
        trip.emplace_back(static_cast<int>(pb.index(static_cast<std::size_t>(it.row()), ib)),
                          static_cast<int>(pb.index(static_cast<std::size_t>(it.col()), ib)),
                          it.value());
      }
    }
  }
  for (int r = 0; r < kb.matrix().outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(kb.matrix(), r); it; ++it) {
      for (std::size_t ia = 0; ia < da; ++ia) {
        trip.emplace_back(static_cast<int>(pb.index(ia, static_cast<std::size_t>(it.row()))),
                          static_cast<int>(pb.index(ia, static_cast<std::size_t>(it.col()))),
                          it.value());
      }
    }
  }
  const RealVector ua = onsite_interaction_diagonal(pb.a(), sc.a.U);
  const RealVector ub = onsite_interaction_diagonal(pb.b(), sc.b.U);
  const RealVector cpl = interaction_coupling_diagonal(pb, sc.V);
  for (std::size_t ia = 0; ia < da; ++ia) {
    for (std::size_t ib = 0; ib < db; ++ib) {
      const auto k = static_cast<Eigen::Index>(pb.index(ia, ib));
      const double d = ua(static_cast<Eigen::Index>(ia)) + ub(static_cast<Eigen::Index>(ib)) + cpl(k);
      if (d != 0.0) trip.emplace_back(static_cast<int>(k), static_cast<int>(k), Complex(d, 0.0));
    }
  }
  const int n = static_cast<int>(da * db);
  SparseMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return SparseHermitianOperator(std::move(m), pb.tag());
}

SparseHermitianOperator build_current_operator(const SpeciesBasis& basis, double phi) {
  const double L = basis.sites();
  // (1 / 2iL) e^{i phi} = -i e^{i phi} / (2L)
  return hopping_operator(basis, Complex(0.0, -1.0) * std::polar(1.0, phi) / (2.0 * L));
}

SparseHermitianOperator identity_operator(std::size_t dim, const std::string& tag) {
  return SparseHermitianOperator(diagonal_matrix(RealVector::Ones(static_cast<Eigen::Index>(dim))), tag);
}

StateVector apply(const SparseHermitianOperator& op, const StateVector& v) {
  if (!v.basis_tag.empty() && !op.basis_tag().empty() && v.basis_tag != op.basis_tag()) {
    throw ContractError("apply: state on basis " + v.basis_tag + ", operator on " + op.basis_tag());
  }
  return StateVector{op.apply(v.amplitudes), op.basis_tag(), false};
}

}  // namespace ringquench

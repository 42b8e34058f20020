// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

// Measurements behind the model-independent property suite. Each returns the
// worst deviation found so that callers can compare against a tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ringquench/dynamics.hpp"
#include "ringquench/observables.hpp"
#include "ringquench/operators.hpp"
#include "ringquench/solvers.hpp"

namespace properties {

using namespace ringquench;

/// L = N_A = N_B = 4, V = 200, J_B = U_A = U_B = 1, J_A = 0.05, phi = pi/10.
inline QuenchScenario reference_scenario(double dt = 0.002, double t_max = 1.0) {
  const double phi = std::numbers::pi / 10;
  return QuenchScenario{{0.05, 1.0, phi, 4, 4}, {1.0, 1.0, phi, 4, 4}, 200.0, dt, t_max, 1};
}

inline ProductAmplitudes as_matrix(const StateVector& psi, const ProductBasis& pb) {
  return Eigen::Map<const ProductAmplitudes>(psi.amplitudes.data(), static_cast<Eigen::Index>(pb.a().dim()),
                                             static_cast<Eigen::Index>(pb.b().dim()));
}

inline StateVector as_state(const ProductAmplitudes& m, const ProductBasis& pb) {
  return StateVector{Eigen::Map<const ComplexVector>(m.data(), m.size()), pb.tag(), false};
}

/// Trotter state after n steps of sc.dt.
inline StateVector trotter_state(const QuenchScenario& sc, const PreparedQuench& pq, int steps) {
  const TrotterPropagator prop(sc, pq.basis);
  ProductAmplitudes m = as_matrix(pq.initial, pq.basis);
  for (int i = 0; i < steps; ++i) prop.step(m);
  return as_state(m, pq.basis);
}

inline double hermiticity(const QuenchScenario& sc) {
  const SpeciesBasis ba = enumerate_basis(sc.a.L, sc.a.N), bb = enumerate_basis(sc.b.L, sc.b.N);
  const ProductBasis pb(ba, bb);
  double worst = build_total_hamiltonian(sc, pb).hermiticity_residual();
  worst = std::max(worst, build_bose_hubbard(sc.a, ba).hermiticity_residual());
  worst = std::max(worst, build_bose_hubbard(sc.b, bb).hermiticity_residual());
  worst = std::max(worst, build_current_operator(bb, sc.b.phi).hermiticity_residual());
  return worst;
}

struct Conservation {
  double norm = 0.0;
  double number_a = 0.0;
  double number_b = 0.0;
  double purity_gap = 0.0;
};

/// Worst drifts over every step of a full Trotter trajectory.
inline Conservation conservation(const QuenchScenario& sc) {
  const PreparedQuench pq = prepare_quench(sc);
  const ProductBasis& pb = pq.basis;
  Eigen::VectorXd na(pb.a().dim()), nb(pb.b().dim());
  for (std::size_t k = 0; k < pb.a().dim(); ++k) {
    na(k) = 0;
    for (auto n : pb.a().state(k)) na(k) += n;
  }
  for (std::size_t k = 0; k < pb.b().dim(); ++k) {
    nb(k) = 0;
    for (auto n : pb.b().state(k)) nb(k) += n;
  }
  const TrotterPropagator prop(sc, pb);
  ProductAmplitudes m = as_matrix(pq.initial, pb);
  const int steps = static_cast<int>(std::lround(sc.t_max / sc.dt));
  Conservation c;
  for (int i = 0; i <= steps; ++i) {
    if (i > 0) prop.step(m);
    const double norm2 = m.squaredNorm();
    c.norm = std::max(c.norm, std::abs(std::sqrt(norm2) - 1.0));
    const Eigen::VectorXd rows = m.rowwise().squaredNorm(), cols = m.colwise().squaredNorm().transpose();
    c.number_a = std::max(c.number_a, std::abs(rows.dot(na) / norm2 - sc.a.N));
    c.number_b = std::max(c.number_b, std::abs(cols.dot(nb) / norm2 - sc.b.N));
    if (i % sc.sample_stride == 0) {
      const EntanglementRecord e = entanglement_record(normalized(as_state(m, pb)), pb);
      c.purity_gap = std::max(c.purity_gap, std::abs(e.purity_a - e.purity_b));
    }
  }
  return c;
}

/// max_t |J_B(t)| and max_t |K_AB(t)| when species A cannot tunnel, along the
/// spectral propagator (Strang splitting of H_B alone would leak at order dt^2).
inline std::pair<double, double> decoupled_response(QuenchScenario sc) {
  sc.a.J = 0.0;
  const PreparedQuench pq = prepare_quench(sc);
  const SparseHermitianOperator cur = build_current_operator(pq.basis.b(), sc.b.phi);
  const double i0 = current_expectation(pq.ground_b.state, cur);
  double jb = 0.0, k = 0.0;
  const Sampler sampler = [&](double, const StateVector& psi) {
    const double it = species_expectation(psi, pq.basis, cur, Species::B);
    jb = std::max(jb, std::abs(relative_current_variation(i0, it)));
    k = std::max(k, std::abs(entanglement_record(psi, pq.basis).schmidt_shifted));
    return std::map<std::string, double>{};
  };
  evolve_reference_trajectory(sc, pq.basis, pq.initial, sampler);
  return {jb, k};
}

/// |psi(dt) - psi_exact| / |psi(dt/2) - psi_exact| at sc.t_max.
inline double halving_ratio(const QuenchScenario& sc) {
  const PreparedQuench pq = prepare_quench(sc);
  const ComplexVector exact = evolve_reference(sc, pq.basis, pq.initial, sc.t_max).amplitudes;
  const int steps = static_cast<int>(std::lround(sc.t_max / sc.dt));
  QuenchScenario half = sc;
  half.dt = sc.dt / 2;
  const double e1 = (trotter_state(sc, pq, steps).amplitudes - exact).norm();
  const double e2 = (trotter_state(half, pq, 2 * steps).amplitudes - exact).norm();
  return e1 / e2;
}

/// |<psi_Trotter(t_max)|psi_exact(t_max)>|^2.
inline double trotter_overlap(const QuenchScenario& sc) {
  const PreparedQuench pq = prepare_quench(sc);
  const ComplexVector exact = evolve_reference(sc, pq.basis, pq.initial, sc.t_max).amplitudes;
  const int steps = static_cast<int>(std::lround(sc.t_max / sc.dt));
  return std::norm(exact.dot(trotter_state(sc, pq, steps).amplitudes));
}

/// Largest change of the spectrum and of the ground-state visibility under
/// phi -> phi + 2 pi / L and phi -> phi + 2 pi.
inline double gauge_periodicity(int L, int N, double J, double phi) {
  const SpeciesBasis basis = enumerate_basis(L, N);
  auto measure = [&](double p) {
    const SparseHermitianOperator h = build_bose_hubbard({J, 1.0, p, L, N}, basis);
    const GroundState gs = ground_state(h);
    return std::make_pair(full_spectrum(h).eigenvalues, visibility(momentum_distribution(gs.state, basis)));
  };
  const auto base = measure(phi);
  double worst = 0.0;
  for (double shift : {2 * std::numbers::pi / L, 2 * std::numbers::pi, -2 * std::numbers::pi / L}) {
    const auto moved = measure(phi + shift);
    worst = std::max(worst, (moved.first - base.first).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(moved.second - base.second));
  }
  return worst;
}

}  // namespace properties

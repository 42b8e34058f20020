// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracle.hpp"
#include "ringquench/errors.hpp"
#include "ringquench/solvers.hpp"

using namespace ringquench;

TEST_CASE("solvers: Lanczos ground state agrees with dense diagonalization") {
  for (int L : {3, 4, 5}) {
    for (double J : {0.01, 0.2, 1.0, 5.0}) {
      const SpeciesBasis b(L, L);
      const auto h = build_bose_hubbard({J, 1.0, std::numbers::pi / 10, L, L}, b);
      const GroundState gs = ground_state(h);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.to_dense());
      CHECK(gs.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12).scale(1.0));
      const double overlap = std::abs(es.eigenvectors().col(0).dot(gs.state.amplitudes));
      CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(gs.gap == doctest::Approx(es.eigenvalues()(1) - es.eigenvalues()(0)).epsilon(1e-8));
      CHECK(gs.residual < 1e-9);
      CHECK_FALSE(gs.degenerate);
    }
  }
}

TEST_CASE("solvers: phase convention and determinism") {
  const SpeciesBasis b(4, 4);
  const auto h = build_bose_hubbard({0.3, 1.0, 0.2, 4, 4}, b);
  const GroundState g1 = ground_state(h), g2 = ground_state(h);
  CHECK((g1.state.amplitudes - g2.state.amplitudes).norm() == 0.0);
  Eigen::Index imax = 0;
  g1.state.amplitudes.cwiseAbs().maxCoeff(&imax);
  CHECK(g1.state.amplitudes(imax).imag() == 0.0);
  CHECK(g1.state.amplitudes(imax).real() > 0.0);
}

TEST_CASE("solvers: level crossing at half flux is flagged degenerate") {
  const int L = 4;
  // Three atoms: total momenta K and N - K are mirror images at half flux.
  const SpeciesBasis b(L, 3);
  const auto h = build_bose_hubbard({1.0, 1.0, std::numbers::pi / L, L, 3}, b);
  const GroundState gs = ground_state(h);
  CHECK(gs.degenerate);
  const auto pairs = lowest_eigenpairs(h, 3);
  CHECK(pairs[1].value - pairs[0].value < 1e-9);
}

TEST_CASE("solvers: full spectrum reproduces the operator") {
  const SpeciesBasis b(3, 3);
  const auto h = build_bose_hubbard({0.5, 1.0, 0.3, 3, 3}, b);
  const EigenDecomposition e = full_spectrum(h);
  const ComplexMatrix rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
  CHECK((rec - h.to_dense()).cwiseAbs().maxCoeff() < 1e-12);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) CHECK(e.eigenvalues(i) <= e.eigenvalues(i + 1));
  CHECK_THROWS_AS(full_spectrum(h, 5), CapacityError);
}

TEST_CASE("solvers: lowest eigenpairs with multiplicity") {
  const SpeciesBasis b(4, 2);
  const auto h = build_bose_hubbard({1.0, 1.0, 0.0, 4, 2}, b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.to_dense());
  const auto pairs = lowest_eigenpairs(h, 4);
  for (int k = 0; k < 4; ++k) CHECK(pairs[k].value == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-10).scale(1.0));
}

// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracle.hpp"
#include "ringquench/dynamics.hpp"
#include "ringquench/errors.hpp"
#include "ringquench/observables.hpp"

using namespace ringquench;

namespace {

std::vector<oracle::Occ> states_of(const SpeciesBasis& b) {
  std::vector<oracle::Occ> out;
  for (const auto& s : b.states()) out.emplace_back(s.begin(), s.end());
  return out;
}

StateVector random_product_state(const ProductBasis& pb, unsigned seed) {
  std::srand(seed);
  StateVector psi{ComplexVector(static_cast<Eigen::Index>(pb.dim())), pb.tag(), false};
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    psi.amplitudes(i) = Complex(std::rand() / double(RAND_MAX) - 0.5, std::rand() / double(RAND_MAX) - 0.5);
  }
  return normalized(psi);
}

}  // namespace

TEST_CASE("observables: ground-state current obeys Hellmann-Feynman") {
  const int L = 4;
  const SpeciesBasis b(L, L);
  const double J = 0.6, phi = 0.3, h = 1e-5;
  auto energy = [&](double p) { return ground_state(build_bose_hubbard({J, 1.0, p, L, L}, b)).energy; };
  const GroundState gs = ground_state(build_bose_hubbard({J, 1.0, phi, L, L}, b));
  const double i = current_expectation(gs.state, build_current_operator(b, phi));
  const double de = (energy(phi + h) - energy(phi - h)) / (2 * h);
  CHECK(i == doctest::Approx(de / (2.0 * J * L)).epsilon(1e-6));
}

TEST_CASE("observables: correlations and momentum distribution match the oracle") {
  const SpeciesBasis b(4, 3);
  const GroundState gs = ground_state(build_bose_hubbard({0.4, 1.0, 0.5, 4, 3}, b));
  const ComplexMatrix c = one_body_correlations(gs.state, b);
  const oracle::Matrix co = oracle::correlations(states_of(b), gs.state.amplitudes);
  CHECK((c - co).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(c.trace().real() == doctest::Approx(3.0).epsilon(1e-12));
  const MomentumDistribution md = momentum_distribution(gs.state, b, 64);
  for (std::size_t k = 0; k < md.q_grid.size(); ++k) {
    CHECK(md.values[k] == doctest::Approx(oracle::momentum(co, md.q_grid[k])).epsilon(1e-12));
  }
  CHECK(md.s_max >= *std::max_element(md.values.begin(), md.values.end()));
  CHECK(md.s_min <= *std::min_element(md.values.begin(), md.values.end()));
  CHECK(md.s_max == doctest::Approx(oracle::momentum(co, md.q_max)).epsilon(1e-12));
}

TEST_CASE("observables: plane-wave condensate has visibility 1") {
  // Non-interacting limit: all atoms in the k = 0 orbital of the ring at phi = 0.
  const int L = 5;
  const SpeciesBasis b(L, 3);
  const GroundState gs = ground_state(build_bose_hubbard({1.0, 1e-9, 0.0, L, 3}, b));
  const MomentumDistribution md = momentum_distribution(gs.state, b);
  CHECK(md.s_max == doctest::Approx(3.0 * L).epsilon(1e-6));
  CHECK(std::remainder(md.q_max, 2 * std::numbers::pi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(visibility(md) > 0.999999);
}

TEST_CASE("observables: Mott state is flat") {
  const SpeciesBasis b(4, 4);
  StateVector mott = basis_state(b.dim(), *b.mott_index(), b.tag());
  const MomentumDistribution md = momentum_distribution(mott, b);
  CHECK(visibility(md) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("observables: reduced density matrices match explicit partial traces") {
  const ProductBasis pb(SpeciesBasis(3, 2), SpeciesBasis(3, 3));
  const StateVector psi = random_product_state(pb, 7);
  const int da = static_cast<int>(pb.a().dim()), db = static_cast<int>(pb.b().dim());
  CHECK((reduced_density_matrix(psi, pb, Species::A) - oracle::rho_a(psi.amplitudes, da, db)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((reduced_density_matrix(psi, pb, Species::B) - oracle::rho_b(psi.amplitudes, da, db)).cwiseAbs().maxCoeff() < 1e-15);
  const EntanglementRecord e = entanglement_record(psi, pb);
  const oracle::Matrix ra = oracle::rho_a(psi.amplitudes, da, db);
  const double purity = (ra * ra).trace().real();
  CHECK(e.purity_a == doctest::Approx(purity).epsilon(1e-13));
  CHECK(std::abs(e.purity_a - e.purity_b) <= 1e-10);
  CHECK(e.schmidt_shifted == doctest::Approx(1.0 / purity - 1.0).epsilon(1e-12));
  CHECK(e.renyi2 == doctest::Approx(-std::log(purity)).epsilon(1e-12));
  StateVector bad = psi;
  bad.amplitudes *= 2.0;
  CHECK_THROWS_AS(entanglement_record(bad, pb), IntegrityError);
}

TEST_CASE("observables: product states carry no entanglement") {
  const ProductBasis pb(SpeciesBasis(3, 3), SpeciesBasis(3, 3));
  const GroundState ga = ground_state(build_bose_hubbard({0.3, 1.0, 0.1, 3, 3}, pb.a()));
  const GroundState gb = ground_state(build_bose_hubbard({2.0, 1.0, 0.2, 3, 3}, pb.b()));
  const EntanglementRecord e = entanglement_record(tensor_product(ga.state, gb.state, pb.tag()), pb);
  CHECK(std::abs(e.schmidt_shifted) < 1e-12);
}

TEST_CASE("observables: species expectation equals the lifted operator") {
  const ProductBasis pb(SpeciesBasis(3, 2), SpeciesBasis(3, 2));
  const StateVector psi = random_product_state(pb, 11);
  const auto jb = build_current_operator(pb.b(), 0.4);
  const ComplexMatrix lifted = Eigen::kroneckerProduct(ComplexMatrix::Identity(6, 6), jb.to_dense());
  const double direct = (psi.amplitudes.adjoint() * lifted * psi.amplitudes)(0).real();
  CHECK(species_expectation(psi, pb, jb, Species::B) == doctest::Approx(direct).epsilon(1e-13));
  const ComplexMatrix lifted_a = Eigen::kroneckerProduct(jb.to_dense(), ComplexMatrix::Identity(6, 6));
  const double direct_a = (psi.amplitudes.adjoint() * lifted_a * psi.amplitudes)(0).real();
  CHECK(species_expectation(psi, pb, jb, Species::A) == doctest::Approx(direct_a).epsilon(1e-13));
}

TEST_CASE("observables: relative current variation needs a baseline") {
  CHECK(relative_current_variation(2.0, 1.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(relative_current_variation(0.0, 1.0), UndefinedBaselineError);
}

TEST_CASE("observables: eigenbasis probabilities sum to one") {
  const SpeciesBasis b(3, 3);
  const auto h = build_bose_hubbard({0.5, 1.0, 0.2, 3, 3}, b);
  const EigenDecomposition e = full_spectrum(h);
  const StateVector psi = basis_state(b.dim(), 2, b.tag());
  double sum = 0.0;
  for (const auto& p : eigenbasis_probabilities(psi, e)) sum += p.probability;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("observables: visibility is lowest next to half flux") {
  for (double lam : {0.2, 1.0, 5.0}) {
    for (int L : {3, 4, 5}) {
      const SpeciesBasis b(L, L);
      const double p0 = 2 * std::numbers::pi / L;
      const int n = 20;
      int arg = -1;
      double lowest = 2.0;
      for (int k = 0; k < n; ++k) {
        const GroundState gs = ground_state(build_bose_hubbard({lam, 1.0, p0 * (k + 0.5) / n, L, L}, b));
        const double v = visibility(momentum_distribution(gs.state, b));
        if (v < lowest) {
          lowest = v;
          arg = k;
        }
      }
      CHECK((arg == n / 2 - 1 || arg == n / 2));
    }
  }
}

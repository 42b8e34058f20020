// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"

using namespace properties;

TEST_CASE("properties: every Hamiltonian and current is Hermitian") {
  CHECK(hermiticity(reference_scenario()) <= 1e-12);
  QuenchScenario sc = reference_scenario();
  sc.a = {0.3, 0.7, 2.1, 5, 5};
  sc.b = {0.2, 1.3, -0.4, 5, 3};
  CHECK(hermiticity(sc) <= 1e-12);
}

TEST_CASE("properties: norm, atom numbers and purity symmetry along a trajectory") {
  const Conservation c = conservation(reference_scenario());
  CHECK(c.norm <= 1e-8);
  CHECK(c.number_a <= 1e-8);
  CHECK(c.number_b <= 1e-8);
  CHECK(c.purity_gap <= 1e-10);
}

TEST_CASE("properties: frozen species A leaves B untouched") {
  const auto [jb, k] = decoupled_response(reference_scenario(0.002, 0.5));
  CHECK(jb <= 1e-10);
  CHECK(k <= 1e-10);
}

TEST_CASE("properties: halving dt divides the Trotter error by four") {
  const double r = halving_ratio(reference_scenario(0.002, 1.0));
  CHECK(r >= 3.5);
  CHECK(r <= 4.5);
}

TEST_CASE("properties: Trotter agrees with the spectral propagator at t = 1/U_B") {
  CHECK(trotter_overlap(reference_scenario(0.002, 1.0)) >= 1.0 - 1e-6);
}

TEST_CASE("properties: spectra and visibility are gauge periodic") {
  CHECK(gauge_periodicity(4, 4, 0.2, 0.3) <= 1e-9);
  CHECK(gauge_periodicity(5, 5, 0.05, 1.1) <= 1e-9);
  CHECK(gauge_periodicity(3, 6, 1.0, 0.7) <= 1e-9);
}

// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "ringquench/basis.hpp"
#include "ringquench/errors.hpp"
#include "ringquench/state.hpp"

using namespace ringquench;

TEST_CASE("basis: dimension matches stars and bars") {
  for (int L = 1; L <= 6; ++L) {
    for (int N = 0; N <= 6; ++N) {
      const SpeciesBasis b(L, N);
      CHECK(b.dim() == oracle::fock_states(L, N).size());
      CHECK(b.dim() == fock_dimension(L, N));
    }
  }
  CHECK(fock_dimension(5, 5) == 126);
  CHECK(binomial(10, 3) == 120);
}

TEST_CASE("basis: enumeration is strictly decreasing lexicographic and indexable") {
  const SpeciesBasis b(4, 4);
  for (std::size_t k = 0; k + 1 < b.dim(); ++k) CHECK(b.state(k + 1) < b.state(k));
  for (std::size_t k = 0; k < b.dim(); ++k) {
    CHECK(b.index(b.state(k)) == k);
    int sum = 0;
    for (auto n : b.state(k)) sum += n;
    CHECK(sum == 4);
  }
  CHECK(b.state(0) == OccupationState{4, 0, 0, 0});
  CHECK(b.state(b.dim() - 1) == OccupationState{0, 0, 0, 4});
}

TEST_CASE("basis: invalid occupation vectors are rejected") {
  const SpeciesBasis b(3, 2);
  CHECK_THROWS_AS(b.index(OccupationState{1, 1}), InvalidStateError);
  CHECK_THROWS_AS(b.index(OccupationState{1, 1, 1}), InvalidStateError);
  CHECK_FALSE(b.find(OccupationState{2, 1, 0}).has_value());
}

TEST_CASE("basis: Mott index only at integer filling") {
  const SpeciesBasis b(3, 6);
  REQUIRE(b.mott_index().has_value());
  CHECK(b.state(*b.mott_index()) == OccupationState{2, 2, 2});
  CHECK_FALSE(SpeciesBasis(3, 4).mott_index().has_value());
}

TEST_CASE("basis: capacity limits") {
  CHECK_THROWS_AS(SpeciesBasis(20, 20, 1000), CapacityError);
  CHECK_THROWS_AS(SpeciesBasis(3, 300), CapacityError);
  CHECK_THROWS_AS(ProductBasis(SpeciesBasis(5, 5), SpeciesBasis(5, 5), 1000), CapacityError);
  CHECK_THROWS_AS(ProductBasis(SpeciesBasis(4, 2), SpeciesBasis(3, 2)), ContractError);
}

TEST_CASE("product basis: ordinal is i_a * dim_b + i_b") {
  const ProductBasis pb(SpeciesBasis(3, 2), SpeciesBasis(3, 3));
  CHECK(pb.dim() == 6 * 10);
  std::set<std::size_t> seen;
  for (std::size_t ia = 0; ia < pb.a().dim(); ++ia) {
    for (std::size_t ib = 0; ib < pb.b().dim(); ++ib) {
      const std::size_t k = pb.index(ia, ib);
      CHECK(k == ia * 10 + ib);
      CHECK(pb.split(k) == std::make_pair(ia, ib));
      seen.insert(k);
    }
  }
  CHECK(seen.size() == pb.dim());
}

TEST_CASE("state: tensor product and normalization") {
  const SpeciesBasis a(3, 1), b(3, 2);
  StateVector pa{ComplexVector::Zero(3), a.tag(), false};
  pa.amplitudes << 1.0, 2.0, 0.0;
  StateVector pb{ComplexVector::Zero(6), b.tag(), false};
  pb.amplitudes(4) = Complex(0.0, 3.0);
  const StateVector na = normalized(pa);
  CHECK(na.norm() == doctest::Approx(1.0).epsilon(1e-15));
  const StateVector ab = tensor_product(normalized(pa), normalized(pb), "ab");
  CHECK(ab.dim() == 18);
  CHECK(std::abs(ab.amplitudes(1 * 6 + 4) - Complex(0.0, 2.0 / std::sqrt(5.0))) < 1e-15);
  CHECK_THROWS_AS(normalized(StateVector{ComplexVector::Zero(3), "x", false}), ContractError);
}

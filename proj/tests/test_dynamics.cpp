// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracle.hpp"
#include "ringquench/dynamics.hpp"
#include "ringquench/errors.hpp"

using namespace ringquench;

namespace {

QuenchScenario small_scenario(double dt, double t_max) {
  return QuenchScenario{{0.1, 1.0, std::numbers::pi / 10, 3, 3}, {1.0, 1.0, std::numbers::pi / 10, 3, 3},
                        20.0, dt, t_max, 1};
}

oracle::Matrix dense_h(const QuenchScenario& sc, const ProductBasis& pb) {
  auto st = [](const SpeciesBasis& b) {
    std::vector<oracle::Occ> out;
    for (const auto& s : b.states()) out.emplace_back(s.begin(), s.end());
    return out;
  };
  return oracle::two_species(st(pb.a()), st(pb.b()),
                             oracle::bose_hubbard(st(pb.a()), sc.a.J, sc.a.U, sc.a.phi),
                             oracle::bose_hubbard(st(pb.b()), sc.b.J, sc.b.U, sc.b.phi), sc.V);
}

StateVector final_state(const QuenchScenario& sc, const PreparedQuench& pq) {
  EvolveOptions opts;
  opts.keep_states = true;
  const Trajectory tr = evolve_trotter(sc, pq.basis, pq.initial, nullptr, opts);
  return tr.states.back();
}

double infidelity(const ComplexVector& a, const ComplexVector& b) { return 1.0 - std::norm(a.dot(b)); }

}  // namespace

TEST_CASE("dynamics: Trotter follows the exact propagator") {
  const QuenchScenario sc = small_scenario(0.001, 0.5);
  const PreparedQuench pq = prepare_quench(sc);
  const oracle::Vector exact = oracle::expm_hermitian(dense_h(sc, pq.basis), 0.5) * pq.initial.amplitudes;
  CHECK(infidelity(exact, final_state(sc, pq).amplitudes) < 1e-7);
}

TEST_CASE("dynamics: Strang splitting is second order") {
  const QuenchScenario coarse = small_scenario(0.01, 0.5);
  const PreparedQuench pq = prepare_quench(coarse);
  const oracle::Vector exact = oracle::expm_hermitian(dense_h(coarse, pq.basis), 0.5) * pq.initial.amplitudes;
  const double e1 = (final_state(coarse, pq).amplitudes - exact).norm();
  const double e2 = (final_state(small_scenario(0.005, 0.5), pq).amplitudes - exact).norm();
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("dynamics: reference propagator matches the dense oracle") {
  const QuenchScenario sc = small_scenario(0.01, 1.0);
  const PreparedQuench pq = prepare_quench(sc);
  const StateVector r = evolve_reference(sc, pq.basis, pq.initial, 0.73);
  const oracle::Vector exact = oracle::expm_hermitian(dense_h(sc, pq.basis), 0.73) * pq.initial.amplitudes;
  CHECK((r.amplitudes - exact).norm() < 1e-10);
}

TEST_CASE("dynamics: sampling grid includes t = 0, the stride and a final partial step") {
  QuenchScenario sc = small_scenario(0.1, 0.95);
  sc.sample_stride = 3;
  const std::vector<double> t = sample_times(sc);
  REQUIRE(t.size() == 5);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(0.3));
  CHECK(t[3] == doctest::Approx(0.9));
  CHECK(t[4] == doctest::Approx(0.95));
  const PreparedQuench pq = prepare_quench(sc);
  const Trajectory tr = evolve_trotter(sc, pq.basis, pq.initial,
                                       [](double time, const StateVector&) { return std::map<std::string, double>{{"t", time}}; });
  CHECK(tr.times.size() == t.size());
  CHECK(tr.at("t").back() == doctest::Approx(0.95));
  CHECK_THROWS_AS(tr.at("missing"), ContractError);
}

TEST_CASE("dynamics: running average is the cumulative trapezoid") {
  Trajectory tr;
  for (int i = 0; i <= 10; ++i) {
    tr.times.push_back(0.1 * i);
    tr.series["f"].push_back(3.0 * 0.1 * i + 1.0);
  }
  const auto avg = running_time_average(tr, "f").series.at("f");
  CHECK(avg[0] == 1.0);
  for (int i = 1; i <= 10; ++i) CHECK(avg[i] == doctest::Approx(1.0 + 1.5 * 0.1 * i).epsilon(1e-13));
}

TEST_CASE("dynamics: large time steps draw a warning") {
  QuenchScenario sc = small_scenario(0.05, 0.1);
  const PreparedQuench pq = prepare_quench(sc);
  const Trajectory tr = evolve_trotter(sc, pq.basis, pq.initial, nullptr);
  CHECK_FALSE(tr.warnings.empty());
}

TEST_CASE("dynamics: initial state is the product of the species ground states") {
  const QuenchScenario sc = small_scenario(0.01, 0.1);
  const PreparedQuench pq = prepare_quench(sc);
  CHECK(pq.initial.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pq.initial.amplitudes.size() == 100);
  CHECK(std::abs(pq.initial.amplitudes(0) - pq.ground_a.state.amplitudes(0) * pq.ground_b.state.amplitudes(0)) < 1e-15);
}

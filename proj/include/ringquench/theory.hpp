// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file theory.hpp
 * @brief Closed-form perturbative predictions for the quench observables.
 *
 * Every formula is returned together with advisory warnings describing the
 * regime in which it was derived (small lambda, short times). Only the
 * intermediate-time Schmidt formula has a hard domain, |phi_B| < phi_0 / 2.
 *
 * Schmidt-number predictions are per site (K_AB / L).
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringquench/basis.hpp"
#include "ringquench/observables.hpp"
#include "ringquench/operators.hpp"
#include "ringquench/state.hpp"

namespace ringquench::theory {

struct TheoryInputs {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  int nu_a = 1;
  int nu_b = 1;
  int L = 4;
  int z = 2;  ///< coordination number; 2 on the ring
  double phi_a = 0.0;
  double phi_b = 0.0;
  double V = 0.0;
  double U_a = 1.0;
  double U_b = 1.0;
  double J_b = 0.0;

  double alpha_a() const noexcept { return nu_a * (nu_a + 1.0); }
  double alpha_b() const noexcept { return nu_b * (nu_b + 1.0); }
  /// Throws ContractError unless nu >= 1, z >= 2, L >= 3, lambda >= 0.
  void validate() const;
};

/// Inputs of a quench scenario; both species must have integer filling.
TheoryInputs from_scenario(const QuenchScenario& sc);

/// Energies divided by the atom numbers (U_A -> U_A / N_A, U_B, J_B -> / N_B),
/// the scaling that keeps short-time results meaningful as N grows.
TheoryInputs thermodynamic_rescale(const TheoryInputs& ti);

struct Prediction {
  double value = 0.0;
  std::vector<std::string> warnings;
};

double flux_quantum(int L);
/// Angular momentum ell = floor(phi / phi_0 + 1/2).
int angular_momentum(double phi, int L);
/// floor(phi / phi_0).
int flux_floor(double phi, int L);
/// True within 1e-9 of a half-integer multiple of phi_0.
bool near_half_flux(double phi, int L);

double v_factor(double phi, int L);
double w_factor(double phi, int L);

/// Second-order visibility of a Mott insulator with the given species' parameters.
Prediction visibility_mi(const TheoryInputs& ti, Species s);

/// Second-order momentum distribution S_phi(q) of the Mott insulator.
Prediction momentum_distribution_mi(const TheoryInputs& ti, double q, Species s);

/// J_B(t) = 2 alpha_A lambda_A^2 [3 - 2 cos tV - cos 2tV].
Prediction current_variation_t(const TheoryInputs& ti, double t);

struct CurrentAverage {
  double value = 0.0;                      ///< 6 alpha_A lambda_A^2
  std::optional<double> visibility_form;   ///< 3 nu_A / (8 (nu_A+1)) V_A^2 / v_L^2; empty where v_L = 0
  std::vector<std::string> warnings;
};

/// Time-averaged relative current variation; V_A is the first-order visibility
/// unless supplied.
CurrentAverage current_variation_avg(const TheoryInputs& ti,
                                     std::optional<double> visibility_a = std::nullopt);

/// K_AB(t) / L when both gases are Mott insulators.
Prediction schmidt_mi_mi(const TheoryInputs& ti, double t);

struct SchmidtAverage {
  double value = 0.0;                     ///< 8 alpha_A alpha_B z (2z - 1) lambda_A^2 lambda_B^2
  std::optional<double> visibility_form;  ///< visibility expression (ring only)
  std::vector<std::string> warnings;
};

SchmidtAverage schmidt_mi_mi_avg(const TheoryInputs& ti);

/// Short-time K_AB(t) / L for a superfluid B on a finite ring.
Prediction schmidt_mi_sf(const TheoryInputs& ti, double t);

/// Intermediate-time K_AB(t) / L for a superfluid B; ValidityError unless
/// |phi_B| < phi_0 / 2.
Prediction schmidt_mi_sf_intermediate(const TheoryInputs& ti, double t);

/// Finite-ring short-time proportionality factor.
double beta(int nu_b, int L);
/// L -> infinity limit of beta at fixed filling.
double beta_thermodynamic(int nu_b);
/// Intermediate-time proportionality factor.
double beta_prime(int nu_b);

/// (2/3)(1 - sum of squared Fock masses bucketed by n_1 - n_0).
double beta_general(const StateVector& psi_b, const SpeciesBasis& basis_b);

/// First-order-in-lambda_A state after the quench, normalized, on pb.
StateVector perturbative_post_quench_state(const TheoryInputs& ti, const StateVector& psi_b,
                                           const ProductBasis& pb, double t);

/// 1 - 2 lambda_A^2 alpha_A L clipped to [0, 1].
Prediction peak_probability(const TheoryInputs& ti);

struct RestrictedCurrent {
  double value = 0.0;
  bool degenerate = false;  ///< no bond left (L <= 3)
};

/// Current of psi_b with the three bonds starting at sites j-1, j, j+1 removed.
RestrictedCurrent superposition_current_decomposition(const StateVector& psi_b,
                                                      const SpeciesBasis& basis_b, int j,
                                                      double phi_b);

}  // namespace ringquench::theory

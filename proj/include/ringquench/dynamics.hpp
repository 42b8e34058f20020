// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Post-quench propagation of the two-species state.
 *
 * The Trotter path uses the Strang splitting
 *   U(dt) = exp(-i dt/2 D) exp(-i dt K) exp(-i dt/2 D),
 * where D collects every diagonal term (both on-site interactions and the
 * interspecies coupling) and K = K_A (x) 1 + 1 (x) K_B. The kinetic factor is
 * exact: exp(-i dt K) = exp(-i dt K_A) (x) exp(-i dt K_B), each species factor
 * taken from a dense eigendecomposition of its single-species hopping matrix.
 *
 * The reference path expands psi0 in the full spectrum of H_AB.
 */

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ringquench/basis.hpp"
#include "ringquench/operators.hpp"
#include "ringquench/solvers.hpp"

namespace ringquench {

/// Product amplitudes psi[i_a * dim_b + i_b] viewed as a dim_a x dim_b matrix.
using ProductAmplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> series;
  std::vector<StateVector> states;  ///< filled only when requested
  std::vector<std::string> warnings;

  /// Throws ContractError for an unknown key.
  const std::vector<double>& at(const std::string& key) const;
};

/// Called on every sample with the time and the (renormalized) state.
using Sampler = std::function<std::map<std::string, double>(double, const StateVector&)>;

struct EvolveOptions {
  bool keep_states = false;
  double norm_tolerance = 1e-6;
};

class TrotterPropagator {
 public:
  TrotterPropagator(const QuenchScenario& sc, const ProductBasis& pb);

  /// One Strang step of length dt applied in place.
  void step(ProductAmplitudes& psi, double dt) const;
  void step(ProductAmplitudes& psi) const { step(psi, dt_); }

 private:
  struct SpeciesKinetic {
    ComplexMatrix eigenvectors;
    RealVector eigenvalues;
    ComplexMatrix propagator(double dt) const;
  };

  double dt_;
  ProductAmplitudes half_diag_;  // exp(-i dt/2 D) laid out like the amplitudes
  ProductAmplitudes diag_;       // D itself, for partial steps
  SpeciesKinetic kin_a_, kin_b_;
  ComplexMatrix ua_, ub_t_;  // exp(-i dt K_A), exp(-i dt K_B)^T
};

/// Trotter propagation from psi0 up to sc.t_max, sampling every sample_stride
/// steps plus t = 0 and the final time. A t_max that is not a multiple of dt
/// ends with one shorter step.
Trajectory evolve_trotter(const QuenchScenario& sc, const ProductBasis& pb, const StateVector& psi0,
                          const Sampler& sampler, const EvolveOptions& opts = {});

class ReferencePropagator {
 public:
  ReferencePropagator(const QuenchScenario& sc, const ProductBasis& pb,
                      std::size_t dense_cap = kDefaultDenseCap);

  StateVector evolve(const StateVector& psi0, double t) const;
  const EigenDecomposition& spectrum() const noexcept { return eig_; }

 private:
  EigenDecomposition eig_;
};

/// psi(t) = sum_i exp(-i E_i t) |Phi_i><Phi_i|psi0>.
StateVector evolve_reference(const QuenchScenario& sc, const ProductBasis& pb,
                             const StateVector& psi0, double t);

/// Same sampling grid as evolve_trotter, with states from the spectral propagator.
Trajectory evolve_reference_trajectory(const QuenchScenario& sc, const ProductBasis& pb,
                                       const StateVector& psi0, const Sampler& sampler,
                                       const EvolveOptions& opts = {});

/// Sample times used by both propagators.
std::vector<double> sample_times(const QuenchScenario& sc);

/// Cumulative trapezoidal mean (1/t) int_0^t f; the value at t = 0 is f(0).
Trajectory running_time_average(const Trajectory& traj, const std::string& key);

/// Ground states of H_A and H_B and their product over the product basis.
struct PreparedQuench {
  ProductBasis basis;
  GroundState ground_a;
  GroundState ground_b;
  StateVector initial;
};

PreparedQuench prepare_quench(const QuenchScenario& sc);

}  // namespace ringquench

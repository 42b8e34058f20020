// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ringquench/errors.hpp"

namespace ringquench {

const std::vector<double>& Trajectory::at(const std::string& key) const {
  auto it = series.find(key);
  if (it == series.end()) throw ContractError("trajectory has no series named '" + key + "'");
  return it->second;
}

namespace {

ProductAmplitudes as_matrix(const ComplexVector& v, Eigen::Index da, Eigen::Index db) {
  return Eigen::Map<const ProductAmplitudes>(v.data(), da, db);
}

ComplexVector as_vector(const ProductAmplitudes& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ProductAmplitudes diagonal_phase(const ProductAmplitudes& d, double tau) {
  return d.unaryExpr([tau](const Complex& e) { return std::polar(1.0, -tau * e.real()); });
}

void check_initial(const StateVector& psi0, const ProductBasis& pb) {
  if (psi0.dim() != pb.dim()) {
    throw ContractError("initial state has dimension " + std::to_string(psi0.dim()) +
                        ", product basis " + std::to_string(pb.dim()));
  }
  if (!psi0.basis_tag.empty() && psi0.basis_tag != pb.tag()) {
    throw ContractError("initial state lives on " + psi0.basis_tag + ", expected " + pb.tag());
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ContractError("initial state must be normalized");
}

struct StepPlan {
  long full_steps = 0;
  double remainder = 0.0;
};

StepPlan plan_steps(const QuenchScenario& sc) {
  StepPlan p;
  p.full_steps = static_cast<long>(std::floor(sc.t_max / sc.dt + 1e-9));
  p.remainder = sc.t_max - static_cast<double>(p.full_steps) * sc.dt;
  if (p.remainder <= 1e-9 * sc.dt) p.remainder = 0.0;
  return p;
}

std::string resolution_warning(const QuenchScenario& sc) {
  const double limit = 0.1 * 2.0 * std::numbers::pi / sc.V;
  if (sc.dt <= limit) return {};
  std::ostringstream os;
  os << "dt = " << sc.dt << " exceeds 0.1*2pi/V = " << limit
     << "; the fastest interspecies oscillation is under-resolved";
  return os.str();
}

void record(Trajectory& traj, double t, const StateVector& raw, const Sampler& sampler,
            const EvolveOptions& opts) {
  const double n = raw.norm();
  if (std::abs(n - 1.0) > opts.norm_tolerance) {
    std::ostringstream os;
    os << "norm drift " << std::abs(n - 1.0) << " at t = " << t << " exceeds " << opts.norm_tolerance;
    throw IntegrityError(os.str());
  }
  StateVector psi{raw.amplitudes / n, raw.basis_tag, true};
  traj.times.push_back(t);
  if (sampler) {
    for (auto& [key, value] : sampler(t, psi)) traj.series[key].push_back(value);
  }
  if (opts.keep_states) traj.states.push_back(std::move(psi));
}

}  // namespace

ComplexMatrix TrotterPropagator::SpeciesKinetic::propagator(double dt) const {
  const ComplexVector phases =
      eigenvalues.unaryExpr([dt](double e) { return std::polar(1.0, -dt * e); });
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

TrotterPropagator::TrotterPropagator(const QuenchScenario& sc, const ProductBasis& pb) : dt_(sc.dt) {
  sc.validate();
  const auto da = static_cast<Eigen::Index>(pb.a().dim());
  const auto db = static_cast<Eigen::Index>(pb.b().dim());

  const RealVector ua = onsite_interaction_diagonal(pb.a(), sc.a.U);
  const RealVector ub = onsite_interaction_diagonal(pb.b(), sc.b.U);
  const RealVector cpl = interaction_coupling_diagonal(pb, sc.V);
  diag_.resize(da, db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) diag_(i, j) = ua(i) + ub(j) + cpl(i * db + j);
  }
  half_diag_ = diagonal_phase(diag_, 0.5 * dt_);

  auto decompose = [](const SparseHermitianOperator& k) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k.to_dense());
    if (es.info() != Eigen::Success) {
      throw SolverError("kinetic eigendecomposition failed", std::numeric_limits<double>::quiet_NaN());
    }
    return SpeciesKinetic{es.eigenvectors(), es.eigenvalues()};
  };
  kin_a_ = decompose(build_kinetic(pb.a(), sc.a.J, sc.a.phi));
  kin_b_ = decompose(build_kinetic(pb.b(), sc.b.J, sc.b.phi));
  ua_ = kin_a_.propagator(dt_);
  ub_t_ = kin_b_.propagator(dt_).transpose();
}

void TrotterPropagator::step(ProductAmplitudes& psi, double dt) const {
  if (dt == dt_) {
    psi = psi.cwiseProduct(half_diag_);
    psi = ua_ * psi * ub_t_;
    psi = psi.cwiseProduct(half_diag_);
    return;
  }
  const ProductAmplitudes half = diagonal_phase(diag_, 0.5 * dt);
  psi = psi.cwiseProduct(half);
  psi = kin_a_.propagator(dt) * psi * kin_b_.propagator(dt).transpose();
  psi = psi.cwiseProduct(half);
}

std::vector<double> sample_times(const QuenchScenario& sc) {
  const StepPlan plan = plan_steps(sc);
  std::vector<double> times{0.0};
  for (long s = 1; s <= plan.full_steps; ++s) {
    const bool last = s == plan.full_steps && plan.remainder == 0.0;
    if (s % sc.sample_stride == 0 || last) times.push_back(static_cast<double>(s) * sc.dt);
  }
  if (plan.remainder > 0.0) times.push_back(sc.t_max);
  return times;
}

Trajectory evolve_trotter(const QuenchScenario& sc, const ProductBasis& pb, const StateVector& psi0,
                          const Sampler& sampler, const EvolveOptions& opts) {
  sc.validate();
  check_initial(psi0, pb);
  const TrotterPropagator prop(sc, pb);
  const auto da = static_cast<Eigen::Index>(pb.a().dim());
  const auto db = static_cast<Eigen::Index>(pb.b().dim());
  const StepPlan plan = plan_steps(sc);

  Trajectory traj;
  if (auto w = resolution_warning(sc); !w.empty()) traj.warnings.push_back(w);

  ProductAmplitudes m = as_matrix(psi0.amplitudes, da, db);
  StateVector scratch{ComplexVector(), pb.tag(), false};
  auto sample = [&](double t) {
    scratch.amplitudes = as_vector(m);
    record(traj, t, scratch, sampler, opts);
  };

  sample(0.0);
  for (long s = 1; s <= plan.full_steps; ++s) {
    prop.step(m);
    const bool last = s == plan.full_steps && plan.remainder == 0.0;
    if (s % sc.sample_stride == 0 || last) sample(static_cast<double>(s) * sc.dt);
  }
  if (plan.remainder > 0.0) {
    prop.step(m, plan.remainder);
    sample(sc.t_max);
  }
  return traj;
}

ReferencePropagator::ReferencePropagator(const QuenchScenario& sc, const ProductBasis& pb,
                                         std::size_t dense_cap) {
  if (pb.dim() > dense_cap) {
    throw CapacityError("reference propagator: dimension " + std::to_string(pb.dim()) +
                        " exceeds dense cap " + std::to_string(dense_cap));
  }
  eig_ = full_spectrum(build_total_hamiltonian(sc, pb), dense_cap);
}

StateVector ReferencePropagator::evolve(const StateVector& psi0, double t) const {
  if (psi0.dim() != eig_.size()) throw ContractError("reference propagator: dimension mismatch");
  if (t == 0.0) return StateVector{psi0.amplitudes, eig_.basis_tag, psi0.normalized};
  const ComplexVector c = eig_.eigenvectors.adjoint() * psi0.amplitudes;
  const ComplexVector phases =
      eig_.eigenvalues.unaryExpr([t](double e) { return std::polar(1.0, -t * e); });
  return StateVector{eig_.eigenvectors * c.cwiseProduct(phases), eig_.basis_tag, psi0.normalized};
}

StateVector evolve_reference(const QuenchScenario& sc, const ProductBasis& pb,
                             const StateVector& psi0, double t) {
  return ReferencePropagator(sc, pb).evolve(psi0, t);
}

Trajectory evolve_reference_trajectory(const QuenchScenario& sc, const ProductBasis& pb,
                                       const StateVector& psi0, const Sampler& sampler,
                                       const EvolveOptions& opts) {
  sc.validate();
  check_initial(psi0, pb);
  const ReferencePropagator prop(sc, pb);
  Trajectory traj;
  for (double t : sample_times(sc)) record(traj, t, prop.evolve(psi0, t), sampler, opts);
  return traj;
}

Trajectory running_time_average(const Trajectory& traj, const std::string& key) {
  const std::vector<double>& f = traj.at(key);
  if (f.size() != traj.times.size()) {
    throw ContractError("series '" + key + "' is not aligned with the time axis");
  }
  Trajectory out;
  out.times = traj.times;
  std::vector<double>& avg = out.series[key];
  avg.reserve(f.size());
  double integral = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == 0) {
      avg.push_back(f[0]);
      continue;
    }
    integral += 0.5 * (f[i] + f[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    const double span = traj.times[i] - traj.times[0];
    avg.push_back(span > 0.0 ? integral / span : f[i]);
  }
  return out;
}

PreparedQuench prepare_quench(const QuenchScenario& sc) {
  sc.a.validate();
  sc.b.validate();
  if (sc.a.L != sc.b.L) throw ContractError("species must share the ring: L_A != L_B");
  ProductBasis pb(SpeciesBasis(sc.a.L, sc.a.N), SpeciesBasis(sc.b.L, sc.b.N));
  GroundState ga = ground_state(build_bose_hubbard(sc.a, pb.a()));
  GroundState gb = ground_state(build_bose_hubbard(sc.b, pb.b()));
  StateVector init = tensor_product(ga.state, gb.state, pb.tag());
  return PreparedQuench{std::move(pb), std::move(ga), std::move(gb), std::move(init)};
}

}  // namespace ringquench

// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/theory.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "ringquench/errors.hpp"

namespace ringquench::theory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureTolerance = 1e-9;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Adaptive Gauss-Kronrod integral of f over [a, b] to kQuadratureTolerance absolute.
template <typename F>
double integrate(F&& f, double a, double b) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 15, 1e-12, &error);
  if (!(error <= kQuadratureTolerance)) {
    throw QuadratureError("quadrature on [" + fmt(a) + ", " + fmt(b) + "] reached only " + fmt(error),
                          error);
  }
  return value;
}

void warn_small_lambda(std::vector<std::string>& w, double lambda, const char* name, double limit) {
  if (lambda > limit) {
    w.push_back(std::string(name) + " = " + fmt(lambda) + " exceeds " + fmt(limit) +
                "; the expansion assumes a deep Mott insulator");
  }
}

void warn_short_time(std::vector<std::string>& w, const TheoryInputs& ti, double t) {
  const double scale = std::max({ti.U_a, ti.U_b, ti.J_b});
  if (t * scale > 0.1) {
    w.push_back("t = " + fmt(t) + " is not small against 1/U_A, 1/U_B, 1/J_B");
  }
}

void warn_half_flux(std::vector<std::string>& w, double phi, int L, const char* name) {
  if (near_half_flux(phi, L)) {
    w.push_back(std::string(name) + " sits at a half-integer multiple of phi_0; the ground state is degenerate");
  }
}

struct SpeciesView {
  double lambda;
  int nu;
  double phi;
};

SpeciesView view(const TheoryInputs& ti, Species s) {
  return s == Species::A ? SpeciesView{ti.lambda_a, ti.nu_a, ti.phi_a}
                         : SpeciesView{ti.lambda_b, ti.nu_b, ti.phi_b};
}

}  // namespace

void TheoryInputs::validate() const {
  if (nu_a < 1 || nu_b < 1) throw ContractError("filling factors must be integers >= 1");
  if (z < 2) throw ContractError("coordination number must be >= 2");
  if (L < 3) throw ContractError("ring needs L >= 3 sites");
  if (!(lambda_a >= 0.0) || !(lambda_b >= 0.0)) throw ContractError("lambda must be >= 0");
}

TheoryInputs from_scenario(const QuenchScenario& sc) {
  sc.a.validate();
  sc.b.validate();
  if (sc.a.N % sc.a.L != 0 || sc.b.N % sc.b.L != 0) {
    throw ContractError("closed-form predictions need integer filling N / L");
  }
  TheoryInputs ti;
  ti.lambda_a = sc.a.lambda();
  ti.lambda_b = sc.b.lambda();
  ti.nu_a = sc.a.filling();
  ti.nu_b = sc.b.filling();
  ti.L = sc.a.L;
  ti.phi_a = sc.a.phi;
  ti.phi_b = sc.b.phi;
  ti.V = sc.V;
  ti.U_a = sc.a.U;
  ti.U_b = sc.b.U;
  ti.J_b = sc.b.J;
  ti.validate();
  return ti;
}

TheoryInputs thermodynamic_rescale(const TheoryInputs& ti) {
  TheoryInputs out = ti;
  const double na = static_cast<double>(ti.nu_a) * ti.L;
  const double nb = static_cast<double>(ti.nu_b) * ti.L;
  out.U_a /= na;
  out.U_b /= nb;
  out.J_b /= nb;
  return out;
}

double flux_quantum(int L) { return 2.0 * kPi / L; }

int angular_momentum(double phi, int L) {
  return static_cast<int>(std::floor(phi / flux_quantum(L) + 0.5));
}

int flux_floor(double phi, int L) { return static_cast<int>(std::floor(phi / flux_quantum(L))); }

bool near_half_flux(double phi, int L) {
  const double x = phi / flux_quantum(L) - 0.5;
  return std::abs(x - std::round(x)) * flux_quantum(L) < 1e-9;
}

double v_factor(double phi, int L) {
  const double p0 = flux_quantum(L);
  const double c1 = std::cos(phi - angular_momentum(phi, L) * p0);
  if (L % 2 == 0) return c1;
  const double c2 = std::cos(0.5 * (1 + 2 * flux_floor(phi, L)) * p0 - phi);
  return 0.5 * (c1 + c2);
}

double w_factor(double phi, int L) {
  if (L % 2 == 0) return 0.0;
  const double p0 = flux_quantum(L);
  const double c1 = std::cos(phi - angular_momentum(phi, L) * p0);
  const double c2 = std::cos(0.5 * (1 + 2 * flux_floor(phi, L)) * p0 - phi);
  return -c1 + c2;
}

Prediction visibility_mi(const TheoryInputs& ti, Species s) {
  ti.validate();
  const SpeciesView sp = view(ti, s);
  Prediction p;
  p.value = 4.0 * (sp.nu + 1) * sp.lambda * v_factor(sp.phi, ti.L) *
            (1.0 - (4.0 * sp.nu + 1) * sp.lambda * w_factor(sp.phi, ti.L));
  warn_small_lambda(p.warnings, sp.lambda, "lambda", 0.3);
  warn_half_flux(p.warnings, sp.phi, ti.L, "phi");
  return p;
}

Prediction momentum_distribution_mi(const TheoryInputs& ti, double q, Species s) {
  ti.validate();
  const SpeciesView sp = view(ti, s);
  const double L = ti.L;
  const double nu = sp.nu, lam = sp.lambda, phi = sp.phi;
  const double first = (1.0 - 1.0 / L) * std::cos(q - phi) + (1.0 / L) * std::cos(q * (L - 1) + phi);
  const double second =
      (1.0 - 2.0 / L) * std::cos(2.0 * (q - phi)) + (2.0 / L) * std::cos(q * (L - 2) + 2.0 * phi);
  Prediction p;
  p.value = L * nu *
            (1.0 + 4.0 * (nu + 1) * lam * first + 6.0 * (nu + 1) * (2 * nu + 1) * lam * lam * second);
  warn_small_lambda(p.warnings, lam, "lambda", 0.3);
  return p;
}

Prediction current_variation_t(const TheoryInputs& ti, double t) {
  ti.validate();
  Prediction p;
  const double tv = t * ti.V;
  p.value = 2.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a * (3.0 - 2.0 * std::cos(tv) - std::cos(2.0 * tv));
  warn_small_lambda(p.warnings, ti.lambda_a, "lambda_A", 0.1);
  warn_short_time(p.warnings, ti, t);
  return p;
}

CurrentAverage current_variation_avg(const TheoryInputs& ti, std::optional<double> visibility_a) {
  ti.validate();
  CurrentAverage out;
  out.value = 6.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a;
  const double v = v_factor(ti.phi_a, ti.L);
  const double vis = visibility_a.value_or(4.0 * (ti.nu_a + 1) * ti.lambda_a * v);
  if (v != 0.0) {
    out.visibility_form = 3.0 * ti.nu_a / (8.0 * (ti.nu_a + 1)) * vis * vis / (v * v);
  } else {
    out.warnings.push_back("v_L(phi_A) vanishes; the visibility form is undefined");
  }
  warn_small_lambda(out.warnings, ti.lambda_a, "lambda_A", 0.1);
  if (ti.V > 0.0 && std::max({ti.U_a, ti.U_b, ti.J_b}) * 10.0 > ti.V) {
    out.warnings.push_back("averaging window 1/V << t << 1/U_A, 1/U_B, 1/J_B is narrow");
  }
  return out;
}

Prediction schmidt_mi_mi(const TheoryInputs& ti, double t) {
  ti.validate();
  const double z = ti.z;
  const double pref = 4.0 * ti.alpha_a() * ti.alpha_b() * z * ti.lambda_a * ti.lambda_a *
                      ti.lambda_b * ti.lambda_b;
  const double cu = std::cos(t * ti.U_b);
  Prediction p;
  p.value = pref * (4.0 * z - 2.0 - 4.0 * (z - 1.0) * std::cos(t * ti.V) * cu -
                    2.0 * std::cos(2.0 * t * ti.V) * cu);
  warn_small_lambda(p.warnings, ti.lambda_a, "lambda_A", 0.1);
  warn_small_lambda(p.warnings, ti.lambda_b, "lambda_B", 0.1);
  if (t * std::max(ti.U_a, ti.J_b) > 0.1 || (ti.V > 0.0 && t * ti.U_b * ti.U_b / ti.V > 0.1)) {
    p.warnings.push_back("t = " + fmt(t) + " is not small against 1/U_A, 1/J_B, V/U_B^2");
  }
  return p;
}

SchmidtAverage schmidt_mi_mi_avg(const TheoryInputs& ti) {
  ti.validate();
  const double z = ti.z;
  SchmidtAverage out;
  out.value = 8.0 * ti.alpha_a() * ti.alpha_b() * z * (2.0 * z - 1.0) * ti.lambda_a * ti.lambda_a *
              ti.lambda_b * ti.lambda_b;
  if (ti.z == 2) {
    const double va = v_factor(ti.phi_a, ti.L), vb = v_factor(ti.phi_b, ti.L);
    if (va != 0.0 && vb != 0.0) {
      const double vis_a = 4.0 * (ti.nu_a + 1) * ti.lambda_a * va;
      const double vis_b = 4.0 * (ti.nu_b + 1) * ti.lambda_b * vb;
      out.visibility_form = 3.0 / 16.0 * ti.nu_a * ti.nu_b / ((ti.nu_a + 1.0) * (ti.nu_b + 1.0)) *
                            vis_a * vis_a * vis_b * vis_b / (va * va * vb * vb);
    }
  }
  warn_small_lambda(out.warnings, ti.lambda_a, "lambda_A", 0.1);
  warn_small_lambda(out.warnings, ti.lambda_b, "lambda_B", 0.1);
  return out;
}

Prediction schmidt_mi_sf(const TheoryInputs& ti, double t) {
  ti.validate();
  const double L = ti.L;
  const double nb = static_cast<double>(ti.nu_b) * ti.L;
  const double base = 1.0 - (2.0 / L) * (1.0 - std::cos(t * ti.V));
  Prediction p;
  p.value = 4.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a * (1.0 - std::pow(base, 2.0 * nb));
  warn_small_lambda(p.warnings, ti.lambda_a, "lambda_A", 0.1);
  if (ti.lambda_b < 10.0) p.warnings.push_back("lambda_B = " + fmt(ti.lambda_b) + " is not deep superfluid");
  warn_short_time(p.warnings, ti, t);
  warn_half_flux(p.warnings, ti.phi_b, ti.L, "phi_B");
  return p;
}

Prediction schmidt_mi_sf_intermediate(const TheoryInputs& ti, double t) {
  ti.validate();
  const double half = 0.5 * flux_quantum(ti.L);
  if (!(std::abs(ti.phi_b) < half - 1e-9)) {
    throw ValidityError("intermediate-time Schmidt number needs |phi_B| < phi_0/2 = " + fmt(half) +
                        ", got " + fmt(ti.phi_b));
  }
  const double arg =
      1.0 - std::cos(t * ti.V) * std::cos(2.0 * t * ti.J_b * std::cos(ti.phi_b));
  Prediction p;
  p.value = 4.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a * (1.0 - std::exp(-4.0 * ti.nu_b * arg));
  warn_small_lambda(p.warnings, ti.lambda_a, "lambda_A", 0.1);
  if (t * std::max(ti.U_a, ti.U_b) > 0.1 || (ti.V > 0.0 && t * ti.J_b * ti.J_b / ti.V > 0.1)) {
    p.warnings.push_back("t = " + fmt(t) + " is not small against 1/U_A, 1/U_B, V/J_B^2");
  }
  return p;
}

double beta(int nu_b, int L) {
  if (nu_b < 1 || L < 3) throw ContractError("beta needs nu_B >= 1 and L >= 3");
  const double n2 = 2.0 * nu_b * L;
  const double invL = 1.0 / L;
  // The integrand is even in s; integrate over half a period.
  auto f = [&](double s) { return std::pow(1.0 - 2.0 * invL * (1.0 - std::cos(s)), n2); };
  return 2.0 / 3.0 * (1.0 - integrate(f, 0.0, kPi) / kPi);
}

double beta_thermodynamic(int nu_b) {
  if (nu_b < 1) throw ContractError("beta needs nu_B >= 1");
  auto f = [nu_b](double s) { return std::exp(-4.0 * nu_b * (1.0 - std::cos(s))); };
  return 2.0 / 3.0 * (1.0 - integrate(f, 0.0, kPi) / kPi);
}

double beta_prime(int nu_b) {
  if (nu_b < 1) throw ContractError("beta' needs nu_B >= 1");
  // Mean of exp(-4 nu (1 - cos s cos(s/k))) over [0, 2 pi k]; the integrand is
  // symmetric about s = pi k, so one half suffices, split at multiples of pi.
  auto mean_at = [nu_b](long k) {
    const double kd = static_cast<double>(k);
    auto f = [nu_b, kd](double s) { return std::exp(-4.0 * nu_b * (1.0 - std::cos(s) * std::cos(s / kd))); };
    double sum = 0.0;
    for (long i = 0; i < k; ++i) sum += integrate(f, kPi * i, kPi * (i + 1));
    return sum / (kPi * kd);
  };
  double prev = mean_at(1);
  for (int m = 1; m <= 20; ++m) {
    const double cur = mean_at(1L << m);
    if (std::abs(cur - prev) < 1e-6) return 2.0 / 3.0 * (1.0 - cur);
    prev = cur;
  }
  throw QuadratureError("beta': the k -> infinity limit did not settle", std::abs(prev));
}

double beta_general(const StateVector& psi_b, const SpeciesBasis& basis_b) {
  if (psi_b.dim() != basis_b.dim()) throw ContractError("beta_general: dimension mismatch");
  if (basis_b.sites() < 2) throw ContractError("beta_general needs at least two sites");
  std::map<int, double> bucket;
  for (std::size_t s = 0; s < basis_b.dim(); ++s) {
    const OccupationState& n = basis_b.state(s);
    bucket[static_cast<int>(n[1]) - static_cast<int>(n[0])] +=
        std::norm(psi_b.amplitudes(static_cast<Eigen::Index>(s)));
  }
  double sum_sq = 0.0;
  for (const auto& [key, mass] : bucket) sum_sq += mass * mass;
  return 2.0 / 3.0 * (1.0 - sum_sq);
}

StateVector perturbative_post_quench_state(const TheoryInputs& ti, const StateVector& psi_b,
                                           const ProductBasis& pb, double t) {
  ti.validate();
  const SpeciesBasis& ba = pb.a();
  const SpeciesBasis& bb = pb.b();
  if (ba.sites() != ti.L || ba.atoms() != ti.nu_a * ti.L) {
    throw ContractError("perturbative state: A basis must hold nu_A atoms per site");
  }
  if (psi_b.dim() != bb.dim()) throw ContractError("perturbative state: psi_B dimension mismatch");
  const int L = ti.L;
  const double alpha = ti.alpha_a();
  const std::size_t mi = *ba.mott_index();

  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(pb.dim()));
  const double c0 = 1.0 - ti.lambda_a * ti.lambda_a * alpha * L;
  for (std::size_t ib = 0; ib < bb.dim(); ++ib) {
    out(static_cast<Eigen::Index>(pb.index(mi, ib))) = c0 * psi_b.amplitudes(static_cast<Eigen::Index>(ib));
  }
  const Complex c1 = ti.lambda_a * std::sqrt(alpha) * std::polar(1.0, -t * ti.U_a);
  OccupationState ph(static_cast<std::size_t>(L), static_cast<std::uint8_t>(ti.nu_a));
  for (int j = 0; j < L; ++j) {
    const int jp = (j + 1) % L;
    for (int sign : {+1, -1}) {
      std::fill(ph.begin(), ph.end(), static_cast<std::uint8_t>(ti.nu_a));
      ph[jp] = static_cast<std::uint8_t>(ti.nu_a + sign);
      ph[j] = static_cast<std::uint8_t>(ti.nu_a - sign);
      const std::size_t ia = ba.index(ph);
      const Complex pre = c1 * std::polar(1.0, sign * ti.phi_a);
      for (std::size_t ib = 0; ib < bb.dim(); ++ib) {
        const OccupationState& n = bb.state(ib);
        const double dn = static_cast<double>(n[jp]) - static_cast<double>(n[j]);
        // Coupling energy of the excitation relative to the Mott state is -sign V dn.
        const Complex kick = std::polar(1.0, sign * t * ti.V * dn);
        out(static_cast<Eigen::Index>(pb.index(ia, ib))) +=
            pre * kick * psi_b.amplitudes(static_cast<Eigen::Index>(ib));
      }
    }
  }
  out.normalize();
  return StateVector{std::move(out), pb.tag(), true};
}

Prediction peak_probability(const TheoryInputs& ti) {
  ti.validate();
  Prediction p;
  p.value = std::clamp(1.0 - 2.0 * ti.lambda_a * ti.lambda_a * ti.alpha_a() * ti.L, 0.0, 1.0);
  warn_small_lambda(p.warnings, ti.lambda_a, "lambda_A", 0.1);
  return p;
}

RestrictedCurrent superposition_current_decomposition(const StateVector& psi_b,
                                                      const SpeciesBasis& basis_b, int j,
                                                      double phi_b) {
  const int L = basis_b.sites();
  if (j < 0 || j >= L) throw ContractError("site index out of range");
  RestrictedCurrent out;
  if (L <= 3) {
    out.degenerate = true;
    return out;
  }
  const ComplexMatrix c = one_body_correlations(psi_b, basis_b);
  const Complex phase = std::polar(1.0, phi_b);
  double sum = 0.0;
  for (int i = 0; i < L; ++i) {
    const int d = ((i - j) % L + L) % L;
    if (d == 0 || d == 1 || d == L - 1) continue;
    sum += (phase * c((i + 1) % L, i)).imag();
  }
  out.value = sum / L;
  return out;
}

}  // namespace ringquench::theory

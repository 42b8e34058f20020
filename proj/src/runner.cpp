// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "ringquench/dynamics.hpp"
#include "ringquench/errors.hpp"
#include "ringquench/observables.hpp"
#include "ringquench/solvers.hpp"
#include "ringquench/theory.hpp"

namespace ringquench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void note(std::vector<std::string>& warnings, const std::string& w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

void note_all(std::vector<std::string>& warnings, const std::vector<std::string>& more) {
  for (const auto& w : more) note(warnings, w);
}

std::optional<theory::TheoryInputs> theory_inputs(const QuenchScenario& sc,
                                                  std::vector<std::string>& warnings) {
  try {
    return theory::from_scenario(sc);
  } catch (const ContractError& e) {
    note(warnings, std::string("closed-form columns left empty: ") + e.what());
    return std::nullopt;
  }
}

// The spectrum is periodic in phi with period phi_0; map into [-phi_0/2, phi_0/2).
double gauge_reduced(double phi, int L) {
  return phi - theory::angular_momentum(phi, L) * theory::flux_quantum(L);
}

// B counts as superfluid for the closed forms once J_B >= U_B.
bool superfluid_b(const theory::TheoryInputs& ti) { return ti.lambda_b >= 1.0; }

double numeric_visibility(const StateVector& psi, const SpeciesBasis& basis, int grid) {
  return visibility(momentum_distribution(psi, basis, grid));
}

struct QuenchOutcome {
  ResultTable table;
  double visibility_a = kNaN;
  double visibility_b = kNaN;
  double current_b0 = kNaN;
  double beta_b = kNaN;  // Fock-mass factor of the numeric ground state of B
  std::optional<theory::TheoryInputs> ti;
};

QuenchOutcome quench_core(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  const QuenchScenario sc = cfg.quench_scenario();
  const PreparedQuench pq = prepare_quench(sc);
  const ProductBasis& pb = pq.basis;
  const SparseHermitianOperator jop = build_current_operator(pb.b(), sc.b.phi);

  QuenchOutcome out;
  out.current_b0 = current_expectation(pq.ground_b.state, jop);
  const bool baseline = std::abs(out.current_b0) > 1e-12;
  if (!baseline) note(warnings, "I_B(0) vanishes; J_B is undefined and left empty");
  if (pq.ground_a.degenerate) note(warnings, "ground state of A is degenerate");
  if (pq.ground_b.degenerate) note(warnings, "ground state of B is degenerate");
  out.visibility_a = numeric_visibility(pq.ground_a.state, pb.a(), cfg.grid_points());
  out.visibility_b = numeric_visibility(pq.ground_b.state, pb.b(), cfg.grid_points());
  out.beta_b = theory::beta_general(pq.ground_b.state, pb.b());

  const double i0 = out.current_b0;
  Sampler sampler = [&](double, const StateVector& psi) {
    const double ib = species_expectation(psi, pb, jop, Species::B);
    const EntanglementRecord e = entanglement_record(psi, pb);
    return std::map<std::string, double>{
        {"I_B", ib},
        {"J_B", baseline ? relative_current_variation(i0, ib) : kNaN},
        {"K_AB", e.schmidt_shifted},
        {"S2", e.renyi2},
        {"purity_A", e.purity_a},
        {"purity_B", e.purity_b}};
  };
  const bool reference = cfg.text_or("propagator", "trotter") == "reference";
  const Trajectory tr = reference ? evolve_reference_trajectory(sc, pb, pq.initial, sampler)
                                  : evolve_trotter(sc, pb, pq.initial, sampler);
  note_all(warnings, tr.warnings);
  const std::vector<double> jb_avg = running_time_average(tr, "J_B").series.at("J_B");
  const std::vector<double> k_avg = running_time_average(tr, "K_AB").series.at("K_AB");

  out.ti = theory_inputs(sc, warnings);
  double th_avg = kNaN, th_k_avg = kNaN, th_k_avg_mid = kNaN;
  std::optional<theory::TheoryInputs> ti_mid;
  const double L = sc.a.L;
  if (out.ti) {
    const theory::TheoryInputs& ti = *out.ti;
    const theory::CurrentAverage ca = theory::current_variation_avg(ti);
    th_avg = ca.value;
    note_all(warnings, ca.warnings);
    if (superfluid_b(ti)) {
      th_k_avg = L * 6.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a * theory::beta(ti.nu_b, ti.L);
      theory::TheoryInputs reduced = ti;
      reduced.phi_b = gauge_reduced(ti.phi_b, ti.L);
      try {
        theory::schmidt_mi_sf_intermediate(reduced, 0.0);
        ti_mid = reduced;
        th_k_avg_mid = L * 6.0 * ti.alpha_a() * ti.lambda_a * ti.lambda_a * theory::beta_prime(ti.nu_b);
      } catch (const ValidityError& e) {
        note(warnings, std::string("intermediate-time columns left empty: ") + e.what());
      }
    } else {
      const theory::SchmidtAverage sa = theory::schmidt_mi_mi_avg(ti);
      th_k_avg = L * sa.value;
      note_all(warnings, sa.warnings);
    }
  }

  ResultTable& t = out.table;
  t.columns = {"t",          "I_B",      "J_B",        "J_B_avg",      "K_AB",
               "K_AB_avg",   "S2",       "purity_A",   "purity_B",     "theory_J_B",
               "theory_avg", "theory_K", "theory_K_avg", "theory_K_intermediate",
               "theory_K_avg_intermediate"};
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double time = tr.times[i];
    double th_j = kNaN, th_k = kNaN, th_k_mid = kNaN;
    if (out.ti) {
      const theory::Prediction pj = theory::current_variation_t(*out.ti, time);
      th_j = pj.value;
      const theory::Prediction pk = superfluid_b(*out.ti) ? theory::schmidt_mi_sf(*out.ti, time)
                                                          : theory::schmidt_mi_mi(*out.ti, time);
      th_k = L * pk.value;
      if (ti_mid) th_k_mid = L * theory::schmidt_mi_sf_intermediate(*ti_mid, time).value;
    }
    t.add_row({time, tr.at("I_B")[i], tr.at("J_B")[i], jb_avg[i], tr.at("K_AB")[i], k_avg[i],
               tr.at("S2")[i], tr.at("purity_A")[i], tr.at("purity_B")[i], th_j, th_avg, th_k,
               th_k_avg, th_k_mid, th_k_avg_mid});
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  return out;
}

std::string curve_suffix(const std::string& curve) { return curve.empty() ? "" : "_" + curve; }

// Header metadata shared by every table of one curve.
void stamp(ResultTable& t, const ScenarioConfig& cfg, const std::string& curve,
           const std::string& content, const std::vector<std::string>& warnings) {
  std::vector<std::pair<std::string, std::string>> md = {
      {"tool", std::string("ringquench ") + RINGQUENCH_VERSION},
      {"table", t.name},
      {"content", content},
      {"curve", curve.empty() ? "-" : curve}};
  for (auto& kv : effective_parameters(cfg)) md.push_back(std::move(kv));
  for (auto& kv : t.metadata) md.push_back(std::move(kv));
  for (const auto& w : warnings) md.emplace_back("warning", w);
  t.metadata = std::move(md);
}

struct JobOutput {
  std::vector<ResultTable> tables;  // first one is the curve's main table
  std::vector<std::string> warnings;
  std::vector<double> summary;      // sweep points only
};

using Job = std::function<JobOutput()>;

std::vector<JobOutput> run_jobs(const std::vector<Job>& jobs, int threads) {
  std::vector<JobOutput> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < std::min(n, jobs.size()); ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string format_value(double v) { return format_double(v); }

std::vector<std::string> sweep_summary_columns(const std::vector<std::string>& keys, Mode inner) {
  std::vector<std::string> cols = keys;
  if (inner == Mode::Quench) {
    for (const char* c : {"lambda_A", "lambda_B", "V_A", "V_B", "I_B0", "J_B_avg", "K_AB_avg",
                          "theory_J_B_avg", "theory_J_B_ratio", "theory_K_avg", "theory_K_ratio", "beta"}) {
      cols.emplace_back(c);
    }
  }
  return cols;
}

std::vector<double> quench_summary(const QuenchOutcome& q, const ScenarioConfig& cfg) {
  const QuenchScenario sc = cfg.quench_scenario();
  const std::vector<double> jb = q.table.column("J_B_avg");
  const std::vector<double> k = q.table.column("K_AB_avg");
  const std::vector<double> th_j = q.table.column("theory_avg");
  const std::vector<double> th_k = q.table.column("theory_K_avg");
  double ratio_j = kNaN, ratio_k = kNaN;
  if (q.ti) {
    const double va = theory::v_factor(q.ti->phi_a, q.ti->L);
    const double vb = theory::v_factor(q.ti->phi_b, q.ti->L);
    const double na = q.ti->nu_a, nb = q.ti->nu_b;
    if (va != 0.0) ratio_j = 3.0 * na / (8.0 * (na + 1.0)) / (va * va);
    if (va != 0.0 && vb != 0.0) {
      ratio_k = 3.0 / 16.0 * na * nb / ((na + 1.0) * (nb + 1.0)) / (va * va * vb * vb);
    }
  }
  return {sc.a.lambda(), sc.b.lambda(), q.visibility_a, q.visibility_b, q.current_b0, jb.back(),
          k.back(), th_j.back(), ratio_j, th_k.back(), ratio_k, q.beta_b};
}

}  // namespace

ResultTable run_quench(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  return quench_core(cfg, warnings).table;
}

ResultTable run_ground_state(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  ResultTable t;
  t.columns = {"species", "L",        "N",        "J",        "U",       "phi",       "lambda",
               "energy",  "gap",      "degenerate", "residual", "current", "visibility",
               "theory_visibility"};
  const int grid = cfg.grid_points();
  std::vector<char> which;
  if (cfg.has("N_A")) which.push_back('A');
  which.push_back('B');
  for (char w : which) {
    const SingleSpeciesParams p = cfg.species(w);
    const SpeciesBasis basis(p.L, p.N);
    const GroundState gs = ground_state(build_bose_hubbard(p, basis));
    if (gs.degenerate) note(warnings, std::string("ground state of ") + w + " is degenerate");
    const double current = current_expectation(gs.state, build_current_operator(basis, p.phi));
    const double vis = numeric_visibility(gs.state, basis, grid);
    double th = kNaN;
    if (p.N % p.L == 0 && p.N > 0) {
      theory::TheoryInputs ti;
      ti.L = p.L;
      ti.lambda_a = ti.lambda_b = p.lambda();
      ti.nu_a = ti.nu_b = p.filling();
      ti.phi_a = ti.phi_b = p.phi;
      const theory::Prediction pr = theory::visibility_mi(ti, Species::B);
      th = pr.value;
      note_all(warnings, pr.warnings);
    }
    t.add_row({w == 'A' ? 0.0 : 1.0, double(p.L), double(p.N), p.J, p.U, p.phi, p.lambda(), gs.energy,
               gs.gap, gs.degenerate ? 1.0 : 0.0, gs.residual, current, vis, th});
  }
  return t;
}

std::vector<ResultTable> run_visibility_scan(const ScenarioConfig& cfg,
                                             std::vector<std::string>& warnings) {
  SingleSpeciesParams p = cfg.species('B');
  const SpeciesBasis basis(p.L, p.N);
  const int grid = cfg.grid_points();
  const bool mott = p.N % p.L == 0 && p.N > 0;
  auto inputs = [&](double phi) {
    theory::TheoryInputs ti;
    ti.L = p.L;
    ti.lambda_b = p.lambda();
    ti.nu_b = p.filling();
    ti.phi_b = phi;
    return ti;
  };
  auto solve = [&](double phi) {
    SingleSpeciesParams q = p;
    q.phi = phi;
    return ground_state(build_bose_hubbard(q, basis));
  };

  std::vector<ResultTable> out(1);
  ResultTable& t = out[0];
  t.columns = {"phi", "visibility", "current", "energy", "degenerate", "theory_visibility"};
  const double lo = cfg.number_or("phi_min", 0.0);
  const double hi = cfg.number_or("phi_max", theory::flux_quantum(p.L));
  const int n = cfg.integer_or("phi_points", 21);
  if (n < 1) throw ConfigError("phi_points must be >= 1", cfg.line_of("phi_points"));
  for (double phi : linspace(lo, hi, n)) {
    const GroundState gs = solve(phi);
    if (gs.degenerate) note(warnings, "degenerate ground state at phi = " + format_value(phi));
    double th = kNaN;
    if (mott) {
      const theory::Prediction pr = theory::visibility_mi(inputs(phi), Species::B);
      th = pr.value;
      note_all(warnings, pr.warnings);
    }
    t.add_row({phi, numeric_visibility(gs.state, basis, grid),
               current_expectation(gs.state, build_current_operator(basis, phi)), gs.energy,
               gs.degenerate ? 1.0 : 0.0, th});
  }

  if (cfg.has("momentum_phis")) {
    int k = 0;
    for (double phi : cfg.numbers("momentum_phis")) {
      const GroundState gs = solve(phi);
      const MomentumDistribution md = momentum_distribution(gs.state, basis, grid);
      ResultTable m;
      m.name = "S" + std::to_string(k++);
      m.metadata.emplace_back("momentum_phi", format_value(phi));
      m.columns = {"q", "S", "theory_S"};
      for (std::size_t i = 0; i < md.q_grid.size(); ++i) {
        const double th = mott ? theory::momentum_distribution_mi(inputs(phi), md.q_grid[i], Species::B).value
                               : kNaN;
        m.add_row({md.q_grid[i], md.values[i], th});
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<ResultTable> run_theory(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  std::vector<ResultTable> out;
  if (cfg.text_or("report", "scenario") == "table1") {
    ResultTable t;
    t.columns = {"nu_B", "L", "beta", "beta_prime"};
    const double inf = std::numeric_limits<double>::infinity();
    t.add_row({1, 3, theory::beta(1, 3), kNaN});
    t.add_row({1, 4, theory::beta(1, 4), kNaN});
    t.add_row({1, 5, theory::beta(1, 5), kNaN});
    t.add_row({1, inf, theory::beta_thermodynamic(1), theory::beta_prime(1)});
    t.add_row({2, 3, theory::beta(2, 3), kNaN});
    t.add_row({2, inf, theory::beta_thermodynamic(2), theory::beta_prime(2)});
    out.push_back(std::move(t));
    return out;
  }

  const QuenchScenario sc = cfg.quench_scenario();
  const theory::TheoryInputs ti = theory::from_scenario(sc);
  theory::TheoryInputs reduced = ti;
  reduced.phi_b = gauge_reduced(ti.phi_b, ti.L);
  const double lam2 = ti.lambda_a * ti.lambda_a;

  ResultTable s;
  s.columns = {"lambda_A",        "lambda_B",        "visibility_A",        "visibility_B",
               "J_B_avg",         "J_B_avg_visibility_form", "K_site_mi_mi_avg",
               "K_site_mi_mi_avg_visibility_form", "K_site_mi_sf_avg", "K_site_mi_sf_avg_intermediate",
               "beta",            "beta_thermodynamic", "beta_prime",        "peak_probability"};
  const theory::Prediction va = theory::visibility_mi(ti, Species::A);
  const theory::Prediction vb = theory::visibility_mi(ti, Species::B);
  const theory::CurrentAverage ca = theory::current_variation_avg(ti);
  const theory::SchmidtAverage sa = theory::schmidt_mi_mi_avg(ti);
  const theory::Prediction peak = theory::peak_probability(ti);
  for (const auto* w : {&va.warnings, &vb.warnings, &ca.warnings, &sa.warnings, &peak.warnings}) {
    note_all(warnings, *w);
  }
  const double b = theory::beta(ti.nu_b, ti.L);
  const double bp = theory::beta_prime(ti.nu_b);
  bool mid_ok = true;
  try {
    theory::schmidt_mi_sf_intermediate(reduced, 0.0);
  } catch (const ValidityError& e) {
    mid_ok = false;
    note(warnings, std::string("intermediate-time values left empty: ") + e.what());
  }
  s.add_row({ti.lambda_a, ti.lambda_b, va.value, vb.value, ca.value, ca.visibility_form.value_or(kNaN),
             sa.value, sa.visibility_form.value_or(kNaN), 6.0 * ti.alpha_a() * lam2 * b,
             mid_ok ? 6.0 * ti.alpha_a() * lam2 * bp : kNaN, b, theory::beta_thermodynamic(ti.nu_b), bp,
             peak.value});
  out.push_back(std::move(s));

  ResultTable series;
  series.name = "series";
  series.columns = {"t", "J_B", "K_site_mi_mi", "K_site_mi_sf", "K_site_mi_sf_intermediate"};
  for (double t : sample_times(sc)) {
    series.add_row({t, theory::current_variation_t(ti, t).value, theory::schmidt_mi_mi(ti, t).value,
                    theory::schmidt_mi_sf(ti, t).value,
                    mid_ok ? theory::schmidt_mi_sf_intermediate(reduced, t).value : kNaN});
  }
  out.push_back(std::move(series));
  return out;
}

ResultTable run_spectrum_projection(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  const QuenchScenario sc = cfg.quench_scenario();
  const PreparedQuench pq = prepare_quench(sc);
  const ReferencePropagator ref(sc, pq.basis);
  const double t0 = cfg.number_or("t0", 1.0);
  const double t1 = cfg.number_or("t1", 2.0);
  const auto p0 = eigenbasis_probabilities(ref.evolve(pq.initial, t0), ref.spectrum());
  const auto p1 = eigenbasis_probabilities(ref.evolve(pq.initial, t1), ref.spectrum());

  ResultTable t;
  t.columns = {"index", "energy", "p_t0", "p_t1"};
  double sum = 0.0, drift = 0.0;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    t.add_row({double(i), p0[i].energy, p0[i].probability, p1[i].probability});
    sum += p0[i].probability;
    drift = std::max(drift, std::abs(p0[i].probability - p1[i].probability));
    if (p0[i].probability > p0[peak].probability) peak = i;
  }
  t.metadata.emplace_back("sum_p_t0", format_value(sum));
  t.metadata.emplace_back("max_abs_p_t0_minus_p_t1", format_value(drift));
  t.metadata.emplace_back("peak_energy", format_value(p0[peak].energy));
  t.metadata.emplace_back("peak_probability", format_value(p0[peak].probability));
  if (auto ti = theory_inputs(sc, warnings)) {
    const theory::Prediction pp = theory::peak_probability(*ti);
    note_all(warnings, pp.warnings);
    const double lam = ti->lambda_a;
    t.metadata.emplace_back("theory_peak_probability", format_value(pp.value));
    t.metadata.emplace_back("theory_peak_tolerance",
                            format_value(3.0 * lam * lam * lam * ti->alpha_a() * ti->L + 2.0 * sc.a.J / sc.V));
  }
  return t;
}

RunResult run(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, ScenarioConfig>> curves;
  if (cfg.curves.empty()) {
    curves.emplace_back("", cfg);
  } else {
    for (const auto& c : cfg.curves) curves.emplace_back(c.name, cfg.with_curve(c));
  }

  RunResult result;
  if (cfg.mode != Mode::Sweep) {
    std::vector<Job> jobs;
    for (const auto& [name, ccfg] : curves) {
      jobs.push_back([ccfg = ccfg]() {
        JobOutput o;
        switch (ccfg.mode) {
          case Mode::Quench: o.tables.push_back(run_quench(ccfg, o.warnings)); break;
          case Mode::GroundState: o.tables.push_back(run_ground_state(ccfg, o.warnings)); break;
          case Mode::VisibilityScan: o.tables = run_visibility_scan(ccfg, o.warnings); break;
          case Mode::Theory: o.tables = run_theory(ccfg, o.warnings); break;
          case Mode::SpectrumProjection: o.tables.push_back(run_spectrum_projection(ccfg, o.warnings)); break;
          case Mode::Sweep: break;
        }
        return o;
      });
    }
    std::vector<JobOutput> outs = run_jobs(jobs, opts.threads);
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const std::string base = opts.name + curve_suffix(curves[c].first);
      for (std::size_t k = 0; k < outs[c].tables.size(); ++k) {
        ResultTable t = std::move(outs[c].tables[k]);
        const std::string extra = t.name;
        t.name = extra.empty() ? base : base + "_" + extra;
        stamp(t, curves[c].second, curves[c].first, k == 0 ? "main" : extra, outs[c].warnings);
        result.tables.push_back(std::move(t));
      }
      note_all(result.warnings, outs[c].warnings);
    }
  } else {
    const std::vector<std::string> keys = cfg.words("sweep.key");
    const Mode inner = parse_mode(cfg.text_or("sweep.mode", "quench"));
    const bool traces = cfg.flag_or("sweep.traces", false);
    struct Point {
      std::size_t curve;
      double value;
    };
    std::vector<Point> points;
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      for (double v : curves[c].second.numbers("sweep.values")) {
        ScenarioConfig pcfg = curves[c].second;
        pcfg.mode = inner;
        for (const auto& k : keys) pcfg = pcfg.with(k, format_value(v));
        points.push_back(Point{c, v});
        jobs.push_back([pcfg, inner]() {
          JobOutput o;
          switch (inner) {
            case Mode::Quench: {
              QuenchOutcome q = quench_core(pcfg, o.warnings);
              o.summary = quench_summary(q, pcfg);
              o.tables.push_back(std::move(q.table));
              break;
            }
            case Mode::GroundState: o.tables.push_back(run_ground_state(pcfg, o.warnings)); break;
            case Mode::VisibilityScan: o.tables = run_visibility_scan(pcfg, o.warnings); break;
            case Mode::Theory: o.tables = run_theory(pcfg, o.warnings); break;
            case Mode::SpectrumProjection: o.tables.push_back(run_spectrum_projection(pcfg, o.warnings)); break;
            case Mode::Sweep: break;
          }
          return o;
        });
      }
    }
    std::vector<JobOutput> outs = run_jobs(jobs, opts.threads);

    for (std::size_t c = 0; c < curves.size(); ++c) {
      ResultTable summary;
      summary.name = opts.name + curve_suffix(curves[c].first);
      std::vector<std::string> curve_warnings;
      std::vector<ResultTable> point_tables;
      int index = 0;
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (points[p].curve != c) continue;
        JobOutput& o = outs[p];
        note_all(curve_warnings, o.warnings);
        const std::vector<double> prefix(keys.size(), points[p].value);
        if (inner == Mode::Quench) {
          if (summary.columns.empty()) summary.columns = sweep_summary_columns(keys, inner);
          std::vector<double> row = prefix;
          row.insert(row.end(), o.summary.begin(), o.summary.end());
          summary.add_row(std::move(row));
          if (traces) {
            ResultTable tr = std::move(o.tables.front());
            tr.name = summary.name + "_p" + std::to_string(index);
            tr.metadata.emplace_back("sweep_value", format_value(points[p].value));
            point_tables.push_back(std::move(tr));
          }
        } else {
          // Other inner modes: the point's main table with the swept value prepended.
          const ResultTable& main = o.tables.front();
          if (summary.columns.empty()) {
            summary.columns = keys;
            summary.columns.insert(summary.columns.end(), main.columns.begin(), main.columns.end());
          }
          for (const auto& r : main.rows) {
            std::vector<double> row = prefix;
            row.insert(row.end(), r.begin(), r.end());
            summary.add_row(std::move(row));
          }
        }
        ++index;
      }
      stamp(summary, curves[c].second, curves[c].first, "main", curve_warnings);
      result.tables.push_back(std::move(summary));
      for (auto& tr : point_tables) {
        stamp(tr, curves[c].second, curves[c].first, "trace", curve_warnings);
        result.tables.push_back(std::move(tr));
      }
      note_all(result.warnings, curve_warnings);
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string gnuplot_script(const ScenarioConfig& cfg, const std::vector<ResultTable>& tables,
                           const std::string& stem) {
  std::string x = cfg.text_or("plot.x", "");
  std::string ys = cfg.text_or("plot.y", "");
  if (x.empty() || ys.empty()) {
    switch (cfg.mode) {
      case Mode::Quench: x = "column(\"t\")", ys = "column(\"J_B_avg\")"; break;
      case Mode::VisibilityScan: x = "column(\"phi\")", ys = "column(\"visibility\")"; break;
      case Mode::SpectrumProjection: x = "column(\"energy\")", ys = "column(\"p_t0\")"; break;
      case Mode::Sweep: {
        const std::string key = cfg.words("sweep.key").front();
        x = "column(\"" + key + "\")";
        ys = cfg.text_or("sweep.mode", "quench") == "quench" ? "column(\"J_B_avg\")" : "column(2)";
        break;
      }
      case Mode::GroundState: x = "column(\"species\")", ys = "column(\"energy\")"; break;
      case Mode::Theory: x = "column(1)", ys = "column(2)"; break;
    }
  }
  std::vector<std::string> y_exprs;
  {
    std::istringstream is(ys);
    std::string item;
    while (std::getline(is, item, ';')) {
      const auto b = item.find_first_not_of(' ');
      if (b != std::string::npos) y_exprs.push_back(item.substr(b, item.find_last_not_of(' ') - b + 1));
    }
  }

  auto substitute = [&cfg](std::string expr, const std::string& curve) {
    ScenarioConfig c = cfg;
    for (const auto& cc : cfg.curves) {
      if (cc.name == curve) c = cfg.with_curve(cc);
    }
    std::map<std::string, std::string> vars;
    for (const auto& [k, v] : effective_parameters(c)) {
      try {
        vars[k] = format_double(parse_number(v));
      } catch (const std::invalid_argument&) {
      }
    }
    if (c.has("J_A") && c.has("U_A")) vars["lambda_A"] = format_double(c.number("J_A") / c.number("U_A"));
    if (c.has("J_B")) vars["lambda_B"] = format_double(c.number("J_B") / c.number_or("U_B", 1.0));
    for (std::size_t open = expr.find('{'); open != std::string::npos; open = expr.find('{', open)) {
      const std::size_t close = expr.find('}', open);
      if (close == std::string::npos) throw ConfigError("plot expression has an unmatched '{'");
      const std::string key = expr.substr(open + 1, close - open - 1);
      auto it = vars.find(key);
      if (it == vars.end()) throw ConfigError("plot expression names unknown parameter '" + key + "'");
      expr.replace(open, close - open + 1, "(" + it->second + ")");
    }
    return expr;
  };

  std::ostringstream os;
  os << "# Generated by ringquench; plots the CSV files next to this script.\n"
     << "set datafile separator \",\"\n"
     << "set datafile commentschars \"#\"\n"
     << "set datafile columnheaders\n"
     << "set terminal pngcairo size 1000,700\n"
     << "set output \"" << stem << ".png\"\n"
     << "set key outside right\n"
     << "set xlabel '" << x << "'\n";
  std::vector<std::string> clauses;
  for (const auto& t : tables) {
    std::string content, curve;
    for (const auto& [k, v] : t.metadata) {
      if (k == "content") content = v;
      if (k == "curve") curve = v == "-" ? "" : v;
    }
    if (content != "main") continue;
    const std::string xs = substitute(x, curve);
    for (std::size_t i = 0; i < y_exprs.size(); ++i) {
      const std::string style = i == 0 ? "linespoints" : "lines dashtype 2";
      std::string title = (curve.empty() ? "" : curve + ": ") + y_exprs[i];
      std::replace(title.begin(), title.end(), '"', '\'');
      clauses.push_back("\"" + t.name + ".csv\" using (" + xs + "):(" + substitute(y_exprs[i], curve) +
                        ") with " + style + " title \"" + title + "\"");
    }
  }
  os << "plot ";
  for (std::size_t i = 0; i < clauses.size(); ++i) os << (i ? ", \\\n     " : "") << clauses[i];
  os << "\n";
  return os.str();
}

RunResult run_and_write(const ScenarioConfig& cfg, const RunOptions& opts) {
  RunResult r = run(cfg, opts);
  std::filesystem::create_directories(opts.out_dir);
  const std::filesystem::path dir(opts.out_dir);
  for (const auto& t : r.tables) {
    const std::string path = (dir / (t.name + ".csv")).string();
    write_csv_file(path, t);
    r.files.push_back(path);
  }
  if (opts.emit_plots) {
    const std::string path = (dir / (opts.name + ".gp")).string();
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open '" + path + "' for writing");
    os << gnuplot_script(cfg, r.tables, opts.name);
    r.files.push_back(path);
  }
  const std::string timing = (dir / (opts.name + ".timing")).string();
  std::ofstream ts(timing);
  if (!ts) throw ConfigError("cannot open '" + timing + "' for writing");
  ts << "wall_seconds = " << r.wall_seconds << "\nthreads = " << opts.threads << "\n";
  r.files.push_back(timing);
  return r;
}

}  // namespace ringquench

// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file runner.hpp
 * @brief Scenario engine: turns a validated config into result tables.
 *
 * Each curve of a config (or the config itself when it has none) yields its
 * own table. Tables carry the effective parameters of their curve as
 * metadata; wall time goes to a separate sidecar so that CSVs of identical
 * runs are byte-identical.
 */

#pragma once

#include <string>
#include <vector>

#include "ringquench/config.hpp"
#include "ringquench/csv.hpp"

namespace ringquench {

struct RunOptions {
  std::string name = "run";  ///< stem of every emitted file
  std::string out_dir = ".";
  int threads = 1;
  bool emit_plots = false;
};

struct RunResult {
  std::vector<ResultTable> tables;
  std::vector<std::string> warnings;
  std::vector<std::string> files;  ///< paths written, in order
  double wall_seconds = 0.0;
};

/// Quench time series. Columns: t, I_B, J_B, J_B_avg, K_AB, K_AB_avg, S2,
/// purity_A, purity_B, theory_J_B, theory_avg, theory_K, theory_K_avg,
/// theory_K_intermediate, theory_K_avg_intermediate. K columns are totals
/// over the ring; theory values absent for a regime are nan.
ResultTable run_quench(const ScenarioConfig& cfg, std::vector<std::string>& warnings);

/// Ground-state summary, one row per species present.
ResultTable run_ground_state(const ScenarioConfig& cfg, std::vector<std::string>& warnings);

/// Visibility and current of species B over a phase grid, followed by one
/// momentum-distribution table per entry of momentum_phis.
std::vector<ResultTable> run_visibility_scan(const ScenarioConfig& cfg,
                                             std::vector<std::string>& warnings);

/// report = table1: beta and beta' entries. report = scenario: closed-form
/// averages followed by a table of the time-dependent formulas.
std::vector<ResultTable> run_theory(const ScenarioConfig& cfg, std::vector<std::string>& warnings);

/// Probabilities of the post-quench state at t0 and t1 in the eigenbasis of H_AB.
ResultTable run_spectrum_projection(const ScenarioConfig& cfg, std::vector<std::string>& warnings);

/// Computes every table of the config; sweep points and curves run on
/// opts.threads workers and are merged in axis order.
RunResult run(const ScenarioConfig& cfg, const RunOptions& opts);

/// run() followed by writing the CSVs, the timing sidecar and, if requested,
/// a gnuplot script into opts.out_dir.
RunResult run_and_write(const ScenarioConfig& cfg, const RunOptions& opts);

/// Gnuplot script plotting the given tables (paths relative to the script).
std::string gnuplot_script(const ScenarioConfig& cfg, const std::vector<ResultTable>& tables,
                           const std::string& stem);

}  // namespace ringquench

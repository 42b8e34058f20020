// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Flat sectioned key-value scenario files.
 *
 *   # comment
 *   mode = quench
 *   [scenario]
 *   L = 4
 *   phi_A = pi/10
 *   [sweep]
 *   key = J_A
 *   values = 0.01, 0.02
 *   [curve.phi_pi_3]
 *   phi_A = pi/3
 *
 * Keys under [scenario] (or before any section) are bare; keys under any other
 * section S read as "S.key". A [curve.NAME] section holds overrides of the base
 * keys for one curve of a figure. [plot] holds the gnuplot expressions x and
 * y for emitted scripts (several y expressions separated by ';').
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringquench/operators.hpp"

namespace ringquench {

enum class Mode { GroundState, Quench, VisibilityScan, Theory, SpectrumProjection, Sweep };

std::string mode_name(Mode m);
/// Throws ConfigError for an unknown name.
Mode parse_mode(const std::string& name);

struct ConfigEntry {
  std::string text;
  int line = 0;
};

struct CurveConfig {
  std::string name;
  std::map<std::string, ConfigEntry> overrides;
};

/// Parsed key-value view of one scenario file.
class ScenarioConfig {
 public:
  Mode mode = Mode::Quench;
  std::map<std::string, ConfigEntry> entries;
  std::vector<CurveConfig> curves;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  int line_of(const std::string& key) const;

  /// Typed accessors; ConfigError cites the line on malformed text.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;

  /// Copy with one curve's overrides applied and no curves.
  ScenarioConfig with_curve(const CurveConfig& c) const;
  /// Copy with key set to text (used by sweeps).
  ScenarioConfig with(const std::string& key, const std::string& text) const;

  /// Quench scenario with defaults (U_B = 1, dt = 0.002, t_max = 0.3,
  /// sample_stride = 10). ConfigError on missing or out-of-domain values.
  QuenchScenario quench_scenario() const;
  /// Parameters of species "A" or "B" alone.
  SingleSpeciesParams species(char which) const;
  int grid_points() const;
};

/// Parses and validates; mode_override (from the command line) wins over a
/// mode key only if they agree, otherwise ConfigError.
ScenarioConfig parse_config(const std::string& text,
                            std::optional<Mode> mode_override = std::nullopt);

/// Parses several files in order; a later layer replaces keys set by an
/// earlier one (used to override a preset with a user file).
ScenarioConfig parse_config_layers(const std::vector<std::string>& layers,
                                   std::optional<Mode> mode_override = std::nullopt);

/// Numbers with an optional pi factor: "0.3", "pi", "-pi/10", "2*pi/5", "1e-3".
double parse_number(const std::string& text);

/// Every effective parameter of the config with defaults applied, for echoing.
std::vector<std::pair<std::string, std::string>> effective_parameters(const ScenarioConfig& cfg);

}  // namespace ringquench

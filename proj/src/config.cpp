// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ringquench/errors.hpp"

namespace ringquench {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "mode",         "title",        "L",           "N_A",          "N_B",
      "J_A",          "U_A",          "phi_A",       "J_B",          "U_B",
      "phi_B",        "V",            "dt",          "t_max",        "sample_stride",
      "propagator",   "grid_points",  "phi_min",     "phi_max",      "phi_points",
      "momentum_phis", "t0",          "t1",          "report",       "sweep.key",
      "sweep.values", "sweep.mode",   "sweep.traces", "plot.x",       "plot.y"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

double parse_factor(const std::string& f) {
  const std::string t = trim(f);
  if (t == "pi") return std::numbers::pi;
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

}  // namespace

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::GroundState: return "ground-state";
    case Mode::Quench: return "quench";
    case Mode::VisibilityScan: return "visibility-scan";
    case Mode::Theory: return "theory";
    case Mode::SpectrumProjection: return "spectrum-projection";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::GroundState, Mode::Quench, Mode::VisibilityScan, Mode::Theory,
                 Mode::SpectrumProjection, Mode::Sweep}) {
    if (mode_name(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + name +
                    "' (expected ground-state, quench, visibility-scan, theory, spectrum-projection or sweep)");
}

double parse_number(const std::string& text) {
  std::string s = trim(text);
  double sign = 1.0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    // A leading sign applies to the whole product, except for plain literals
    // such as "-1e-3" that from_chars reads directly.
    if (s.find("pi") != std::string::npos) {
      sign = s[0] == '-' ? -1.0 : 1.0;
      s = trim(s.substr(1));
    }
  }
  double value = 1.0;
  std::size_t pos = 0;
  char op = '*';
  while (true) {
    const std::size_t next = s.find_first_of("*/", pos);
    const double f = parse_factor(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    value = op == '*' ? value * f : value / f;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  return sign * value;
}

int ScenarioConfig::line_of(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? 0 : it->second.line;
}

double ScenarioConfig::number(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw ConfigError("missing required key '" + key + "' for mode " + mode_name(mode));
  try {
    const double v = parse_number(it->second.text);
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError("key '" + key + "': cannot read '" + it->second.text + "' as a number", it->second.line);
  }
}

double ScenarioConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int ScenarioConfig::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("key '" + key + "' must be an integer", line_of(key));
  }
  return static_cast<int>(v);
}

int ScenarioConfig::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ScenarioConfig::text_or(const std::string& key, const std::string& fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second.text;
}

bool ScenarioConfig::flag_or(const std::string& key, bool fallback) const {
  auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  const std::string& t = it->second.text;
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("key '" + key + "' must be true or false", it->second.line);
}

std::vector<double> ScenarioConfig::numbers(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw ConfigError("missing required key '" + key + "'");
  std::vector<double> out;
  for (const auto& item : split_list(it->second.text)) {
    try {
      out.push_back(parse_number(item));
    } catch (const std::invalid_argument&) {
      throw ConfigError("key '" + key + "': cannot read '" + item + "' as a number", it->second.line);
    }
  }
  if (out.empty()) throw ConfigError("key '" + key + "' holds an empty list", it->second.line);
  return out;
}

std::vector<std::string> ScenarioConfig::words(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw ConfigError("missing required key '" + key + "'");
  return split_list(it->second.text);
}

ScenarioConfig ScenarioConfig::with_curve(const CurveConfig& c) const {
  ScenarioConfig out = *this;
  out.curves.clear();
  for (const auto& [k, v] : c.overrides) out.entries[k] = v;
  return out;
}

ScenarioConfig ScenarioConfig::with(const std::string& key, const std::string& text) const {
  ScenarioConfig out = *this;
  const int line = line_of("sweep.values");
  out.entries[key] = ConfigEntry{text, line};
  return out;
}

SingleSpeciesParams ScenarioConfig::species(char which) const {
  const std::string s(1, which);
  SingleSpeciesParams p;
  p.L = integer("L");
  p.N = integer("N_" + s);
  p.J = which == 'A' ? number("J_A") : number("J_B");
  p.U = number_or("U_" + s, 1.0);
  p.phi = number_or("phi_" + s, 0.0);
  if (p.L == 2) {
    throw ConfigError("L = 2 is rejected: on a two-site ring the bonds 0->1 and 1->0 coincide", line_of("L"));
  }
  if (p.L < 3) throw ConfigError("L must be >= 3, got " + std::to_string(p.L), line_of("L"));
  if (p.N < 0 || p.N > kMaxAtoms) {
    throw ConfigError("N_" + s + " must lie in [0, 255]", line_of("N_" + s));
  }
  if (!(p.U > 0.0)) {
    throw ConfigError("U_" + s + " = " + text_or("U_" + s, "") +
                          " violates the repulsive-interaction invariant U > 0",
                      line_of("U_" + s));
  }
  if (!(p.J >= 0.0)) throw ConfigError("J_" + s + " must be >= 0", line_of("J_" + s));
  return p;
}

QuenchScenario ScenarioConfig::quench_scenario() const {
  QuenchScenario sc;
  sc.a = species('A');
  sc.b = species('B');
  sc.V = number("V");
  sc.dt = number_or("dt", 0.002);
  sc.t_max = number_or("t_max", 0.3);
  sc.sample_stride = integer_or("sample_stride", 10);
  if (!(sc.V > 0.0)) throw ConfigError("V must be > 0 (attractive coupling -V n_A n_B)", line_of("V"));
  if (!(sc.dt > 0.0)) throw ConfigError("dt must be > 0", line_of("dt"));
  if (!(sc.t_max > 0.0)) throw ConfigError("t_max must be > 0", line_of("t_max"));
  if (sc.sample_stride < 1) throw ConfigError("sample_stride must be >= 1", line_of("sample_stride"));
  const std::string prop = text_or("propagator", "trotter");
  if (prop != "trotter" && prop != "reference") {
    throw ConfigError("propagator must be trotter or reference", line_of("propagator"));
  }
  return sc;
}

int ScenarioConfig::grid_points() const {
  const int L = integer("L");
  const int g = integer_or("grid_points", 512 * L);
  if (g < 8) throw ConfigError("grid_points must be >= 8", line_of("grid_points"));
  return g;
}

namespace {

void validate_point(const ScenarioConfig& cfg) {
  switch (cfg.mode) {
    case Mode::Quench:
    case Mode::SpectrumProjection:
      cfg.quench_scenario();
      break;
    case Mode::GroundState:
    case Mode::VisibilityScan:
      cfg.species('B');
      if (cfg.has("N_A")) cfg.species('A');
      cfg.grid_points();
      break;
    case Mode::Theory:
      if (cfg.text_or("report", "scenario") == "table1") break;
      if (cfg.text_or("report", "scenario") != "scenario") {
        throw ConfigError("report must be scenario or table1", cfg.line_of("report"));
      }
      cfg.quench_scenario();
      break;
    case Mode::Sweep:
      break;
  }
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.mode != Mode::Sweep) {
    validate_point(cfg);
    return;
  }
  const std::vector<std::string> keys = cfg.words("sweep.key");
  for (const auto& k : keys) {
    if (!known_keys().count(k) || k.rfind("sweep.", 0) == 0 || k == "mode") {
      throw ConfigError("sweep.key names unknown parameter '" + k + "'", cfg.line_of("sweep.key"));
    }
  }
  const Mode inner = parse_mode(cfg.text_or("sweep.mode", "quench"));
  if (inner == Mode::Sweep) throw ConfigError("sweep.mode cannot be sweep", cfg.line_of("sweep.mode"));
  cfg.flag_or("sweep.traces", false);
  for (double v : cfg.numbers("sweep.values")) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    ScenarioConfig point = cfg;
    point.mode = inner;
    for (const auto& k : keys) point = point.with(k, os.str());
    validate_point(point);
  }
}

}  // namespace

namespace {

// Parses one layer on top of cfg. Keys repeated within the layer are errors;
// keys already set by an earlier layer are replaced.
void parse_layer(const std::string& text, ScenarioConfig& cfg, std::optional<Mode>& file_mode,
                 int& mode_line) {
  std::set<std::string> seen;
  std::map<std::string, std::set<std::string>> seen_curve;
  std::string section;
  CurveConfig* curve = nullptr;
  std::istringstream is(text);
  std::string raw;
  int line = 0;

  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!is_identifier(section)) throw ConfigError("malformed section name '" + section + "'", line);
      curve = nullptr;
      if (section.rfind("curve.", 0) == 0) {
        const std::string name = section.substr(6);
        if (name.empty()) throw ConfigError("curve section needs a name", line);
        if (seen_curve.count(name)) throw ConfigError("duplicate curve '" + name + "'", line);
        seen_curve[name];
        auto it = std::find_if(cfg.curves.begin(), cfg.curves.end(),
                               [&name](const CurveConfig& c) { return c.name == name; });
        if (it == cfg.curves.end()) {
          cfg.curves.push_back(CurveConfig{name, {}});
          it = cfg.curves.end() - 1;
        }
        curve = &*it;
      } else if (section != "scenario" && section != "sweep" && section != "plot") {
        throw ConfigError("unknown section [" + section + "]", line);
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!is_identifier(key)) throw ConfigError("malformed key '" + key + "'", line);
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line);
    if (section == "sweep" || section == "plot") key = section + "." + key;
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'", line);

    if (curve != nullptr) {
      const bool fixed = key == "mode" || key.rfind("plot.", 0) == 0 ||
                         (key.rfind("sweep.", 0) == 0 && key != "sweep.values");
      if (fixed) {
        throw ConfigError("key '" + key + "' cannot be overridden per curve", line);
      }
      if (!seen_curve[curve->name].insert(key).second) {
        throw ConfigError("duplicate key '" + key + "' in curve " + curve->name, line);
      }
      curve->overrides[key] = ConfigEntry{value, line};
      continue;
    }
    if (key == "mode") {
      file_mode = parse_mode(value);
      mode_line = line;
    }
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line);
    cfg.entries[key] = ConfigEntry{value, line};
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, std::optional<Mode> mode_override) {
  return parse_config_layers({text}, mode_override);
}

ScenarioConfig parse_config_layers(const std::vector<std::string>& layers,
                                   std::optional<Mode> mode_override) {
  ScenarioConfig cfg;
  std::optional<Mode> file_mode;
  int mode_line = 0;
  for (const auto& text : layers) parse_layer(text, cfg, file_mode, mode_line);

  if (mode_override && file_mode && *mode_override != *file_mode) {
    throw ConfigError("file declares mode " + mode_name(*file_mode) + " but " +
                          mode_name(*mode_override) + " was requested",
                      mode_line);
  }
  if (mode_override) {
    cfg.mode = *mode_override;
  } else if (file_mode) {
    cfg.mode = *file_mode;
  } else {
    throw ConfigError("no mode given (command line or 'mode' key)");
  }

  // With curves the base may be incomplete; each curve must stand alone.
  if (cfg.curves.empty()) validate(cfg);
  for (const auto& c : cfg.curves) validate(cfg.with_curve(c));
  return cfg;
}

std::vector<std::pair<std::string, std::string>> effective_parameters(const ScenarioConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : cfg.entries) out[k] = v.text;
  out["mode"] = mode_name(cfg.mode);
  auto fill = [&out](const std::string& k, const std::string& v) { out.emplace(k, v); };
  const bool scenario = cfg.mode == Mode::Quench || cfg.mode == Mode::SpectrumProjection ||
                        cfg.mode == Mode::Sweep ||
                        (cfg.mode == Mode::Theory && cfg.text_or("report", "scenario") == "scenario");
  fill("U_B", "1");
  fill("phi_B", "0");
  if (scenario) {
    fill("U_A", "1");
    fill("phi_A", "0");
    fill("dt", "0.002");
    fill("t_max", "0.3");
    fill("sample_stride", "10");
    fill("propagator", "trotter");
  }
  if (cfg.has("L") && cfg.mode != Mode::Theory) {
    fill("grid_points", std::to_string(512 * cfg.integer("L")));
  }
  if (cfg.mode == Mode::SpectrumProjection) {
    fill("t0", "1");
    fill("t1", "2");
  }
  if (cfg.mode == Mode::VisibilityScan) {
    fill("phi_min", "0");
    fill("phi_points", "21");
  }
  if (cfg.mode == Mode::Sweep) {
    fill("sweep.mode", "quench");
    fill("sweep.traces", "false");
  }
  if (cfg.mode == Mode::Theory) fill("report", "scenario");
  return {out.begin(), out.end()};
}

}  // namespace ringquench

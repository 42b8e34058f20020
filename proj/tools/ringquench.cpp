// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

// ringquench <mode> --config <file> [--preset <name>] [--out <dir>] [--threads <n>] [--emit-plots]
//
// Exit codes: 0 success, 2 config or contract error, 3 capacity error,
// 4 numeric-integrity error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ringquench/config.hpp"
#include "ringquench/errors.hpp"
#include "ringquench/presets.hpp"
#include "ringquench/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ringquench::ConfigError("cannot open config '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-species Bose-Hubbard ring quench simulator"};
  app.set_version_flag("--version", std::string(RINGQUENCH_VERSION));

  std::string mode_text;
  std::string config_path;
  std::string preset_name;
  std::string out_dir = ".";
  int threads = 1;
  bool emit_plots = false;
  bool list_presets = false;
  std::string export_dir;

  app.add_option("mode", mode_text,
                 "ground-state | quench | visibility-scan | theory | spectrum-projection | sweep");
  app.add_option("--config", config_path, "scenario file; overrides keys of --preset");
  app.add_option("--preset", preset_name, "built-in scenario (see --list-presets)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads for curves and sweep points")->check(CLI::Range(1, 1024));
  app.add_flag("--emit-plots", emit_plots, "write a gnuplot script next to the CSVs");
  app.add_flag("--list-presets", list_presets, "print the built-in preset names and exit");
  app.add_option("--export-presets", export_dir, "write every built-in preset as <dir>/<name>.ini and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list_presets) {
      for (const auto& p : ringquench::presets()) std::cout << p.name << "\n";
      return 0;
    }
    if (!export_dir.empty()) {
      std::filesystem::create_directories(export_dir);
      for (const auto& p : ringquench::presets()) {
        std::ofstream os(std::filesystem::path(export_dir) / (p.name + ".ini"), std::ios::binary);
        os << p.text;
      }
      return 0;
    }
    if (mode_text.empty()) throw ringquench::ConfigError("a mode is required");
    if (config_path.empty() && preset_name.empty()) {
      throw ringquench::ConfigError("give --config <file>, --preset <name>, or both");
    }
    const ringquench::Mode mode = ringquench::parse_mode(mode_text);

    std::vector<std::string> layers;
    if (!preset_name.empty()) layers.push_back(ringquench::find_preset(preset_name).text);
    std::string config_text;
    if (!config_path.empty()) {
      config_text = read_file(config_path);
      layers.push_back(config_text);
    }
    ringquench::ScenarioConfig cfg;
    try {
      cfg = ringquench::parse_config_layers(layers, mode);
    } catch (const ringquench::ConfigError& e) {
      const std::string source = config_path.empty() ? "preset " + preset_name : config_path;
      throw ringquench::ConfigError(source + ": " + e.what());
    }

    ringquench::RunOptions opts;
    opts.name = !preset_name.empty() ? preset_name
                                     : std::filesystem::path(config_path).stem().string();
    opts.out_dir = out_dir;
    opts.threads = threads;
    opts.emit_plots = emit_plots;
    const ringquench::RunResult r = ringquench::run_and_write(cfg, opts);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : r.files) std::cout << f << "\n";
    return 0;
  } catch (const ringquench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ringquench::ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 2;
  } catch (const ringquench::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const ringquench::IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 4;
  } catch (const ringquench::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 4;
  } catch (const ringquench::QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << "\n";
    return 4;
  } catch (const ringquench::ValidityError& e) {
    std::cerr << "validity error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

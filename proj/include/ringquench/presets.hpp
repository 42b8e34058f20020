// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file presets.hpp
 * @brief Figure and table scenarios compiled into the binary.
 *
 * The texts are the files under presets/ embedded at configure time, so the
 * exported configs and the baked-in ones cannot drift apart.
 */

#pragma once

#include <string>
#include <vector>

namespace ringquench {

struct Preset {
  std::string name;
  std::string text;
};

/// All presets sorted by name.
const std::vector<Preset>& presets();

/// Throws ConfigError naming the known presets if name is unknown.
const Preset& find_preset(const std::string& name);

}  // namespace ringquench

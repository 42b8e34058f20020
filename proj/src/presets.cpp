// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/presets.hpp"

#include <algorithm>

#include "ringquench/errors.hpp"

namespace ringquench {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& embedded_presets();
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = [] {
    std::vector<Preset> out;
    for (const auto& [name, text] : detail::embedded_presets()) out.push_back(Preset{name, text});
    std::sort(out.begin(), out.end(), [](const Preset& a, const Preset& b) { return a.name < b.name; });
    return out;
  }();
  return table;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace ringquench

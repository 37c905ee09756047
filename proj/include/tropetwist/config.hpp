#pragma once

#include <string>
#include <string_view>

#include "tropetwist/map_elites.hpp"

namespace tropetwist {

inline constexpr const char* kDefaultConfigFile = "tropetwist.cfg";

// Applies `key = value` lines (RunConfig field names, `#` comments) on top of
// the given config. Throws std::invalid_argument on unknown keys or bad
// values, naming the line.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

}  // namespace tropetwist

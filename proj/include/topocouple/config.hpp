#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "topocouple/pipeline.hpp"

namespace topocouple {

/// Applies `key = value` settings to a config. Keys: H, G, map, rH, rG,
/// eval, s, seed, checks (comma list or "all"), output, epsilon, orbit_rG,
/// core, m_offset, moduli, sample_cap, budget, packing_nodes.
/// Throws Error("config", ...) on unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses the key = value text format; '#' starts a comment, blank lines are
/// ignored. Errors name the line number.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Ordered key = value text for a config (round-trips through parse_config_text).
std::string format_config(const RunConfig& cfg);

}  // namespace topocouple

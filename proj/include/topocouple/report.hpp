#pragma once

#include <filesystem>
#include <string>

#include "topocouple/pipeline.hpp"

namespace topocouple {

/// Canonical JSON: {"checks": [...], "constants": {...}, "window_metadata": {...}}
/// with keys in lexicographic order, rationals as "num/den", two-space
/// indentation and a trailing newline.
std::string render_report(const Certificate& cert);

/// Writes render_report to `path` ("-" for stdout). Throws
/// Error("report", ...) if the path cannot be written.
void emit_report(const Certificate& cert, const std::filesystem::path& path);

/// 0 when no check failed, 1 otherwise.
int exit_code(const Certificate& cert);

}  // namespace topocouple

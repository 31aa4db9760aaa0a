#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "vidstop/core.hpp"

namespace vidstop {

/// JSON Lines, one clip per line:
///   {"id": str, "alphabet": str, "truth": str,
///    "frames": [{"w": real (optional, default 1.0), "rows": [[K reals], ...]}, ...]}
/// Rows carry the K alphabet classes only; the empty class is added on load.
/// Blank lines are skipped. Errors name the 1-based line number.
std::vector<Clip> parse_clips(std::istream& in, LoadDiagnostics* diagnostics = nullptr);
std::vector<Clip> load_clips(const std::filesystem::path& path, LoadDiagnostics* diagnostics = nullptr);

void write_clips(std::ostream& out, const std::vector<Clip>& clips);
void save_clips(const std::filesystem::path& path, const std::vector<Clip>& clips);

}  // namespace vidstop

// io_util.hpp -- deterministic text formatting and atomic file writes for
// machine-readable outputs.

#pragma once

#include <filesystem>
#include <string>

namespace qgrid {

// Shortest round-trippable decimal form ("%.17g" trimmed), locale-free.
std::string format_double(double v);

// Write-to-temp-then-rename so partially written outputs are never observed.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qgrid

#pragma once

#include <filesystem>
#include <string>

namespace geolex {

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double value);

// Writes to <path>.tmp.<pid> and renames, so interrupted runs never leave
// truncated artifacts behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace geolex

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace skg::io {

/// Reads a whole file; throws IoError naming the path if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Lines without their terminators. A trailing newline does not produce an
/// extra empty line.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename, so readers never see a
/// partially written file. Creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace skg::io

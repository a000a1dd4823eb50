#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace vmdtex::util {

/// Writes `content` to a sibling temp file and renames it over `path`, so readers
/// never observe a truncated artifact. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> content);

std::string read_file(const std::filesystem::path& path);

}  // namespace vmdtex::util

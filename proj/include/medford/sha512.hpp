#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace medford {

/// Lowercase hex SHA-512 digest (128 characters).
std::string sha512_hex(std::span<const unsigned char> bytes);
std::string sha512_hex(std::string_view bytes);

/// Streams the file. Throws std::runtime_error if it cannot be read.
std::string sha512_file(const std::filesystem::path& path);

} // namespace medford

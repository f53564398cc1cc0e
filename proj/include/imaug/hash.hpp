#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace imaug {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(const std::uint8_t* data, std::size_t size);

inline std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
  return sha256_hex(bytes.data(), bytes.size());
}

std::string sha256_file(const std::filesystem::path& path);

}  // namespace imaug

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "imaug/image.hpp"

namespace imaug {

/// Decodes a PNG or JPEG file (detected by magic bytes) into 8-bit RGB.
/// Grayscale is replicated across channels, alpha is dropped, palettes are
/// expanded, 16-bit PNG is reduced to 8. Throws std::runtime_error on
/// unreadable or unsupported input.
ImageBuffer load_image(const std::filesystem::path& path);

ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes);

/// Encodes to an in-memory PNG (8-bit RGB, fixed settings, so identical
/// pixels give identical bytes).
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);

void save_png(const ImageBuffer& img, const std::filesystem::path& path);

}  // namespace imaug

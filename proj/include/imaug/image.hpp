#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace imaug {

/// Dense 8-bit RGB raster, row-major and channel-interleaved.
/// Every value that flows through the library is one of these; transforms
/// compute in double precision and quantize back exactly once.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  static constexpr int kChannels = 3;
  std::vector<std::uint8_t> data;

  ImageBuffer() = default;
  ImageBuffer(int w, int h);

  std::uint8_t& at(int x, int y, int c) {
    return data[static_cast<std::size_t>((y * width + x) * kChannels + c)];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data[static_cast<std::size_t>((y * width + x) * kChannels + c)];
  }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  bool same_dims(const ImageBuffer& other) const {
    return width == other.width && height == other.height;
  }

  friend bool operator==(const ImageBuffer& a, const ImageBuffer& b) {
    return a.width == b.width && a.height == b.height && a.data == b.data;
  }
};

enum class FillVariant { Reflect, Nearest, Wrap, Constant };

/// Boundary policy for coordinates sampled outside the raster.
/// cval is consulted only by the Constant variant.
struct FillMode {
  FillVariant variant = FillVariant::Reflect;
  std::uint8_t cval = 0;

  static FillMode reflect() { return {FillVariant::Reflect, 0}; }
  static FillMode nearest() { return {FillVariant::Nearest, 0}; }
  static FillMode wrap() { return {FillVariant::Wrap, 0}; }
  static FillMode constant(std::uint8_t cval) { return {FillVariant::Constant, cval}; }
};

/// Round to nearest (ties away from zero), then clamp to [0,255].
/// Throws std::invalid_argument on non-finite input.
std::uint8_t clamp_round(double x);

/// Constant-filled w x h image. Throws std::invalid_argument on a zero dimension.
ImageBuffer new_image(int width, int height, std::uint8_t fill);

/// Maps a possibly out-of-range index onto [0, n-1] per the fill mode.
/// Reflect uses the edge-duplicating convention (d c b a | a b c d | d c b a),
/// Nearest clamps, Wrap is floored modulo, Constant yields nullopt outside range.
std::optional<int> map_index(long i, int n, const FillMode& mode);

/// Bilinear resampling with half-pixel-center coordinate mapping.
/// Aspect ratio is not preserved; same-size targets are pixel-exact identities.
ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h);

}  // namespace imaug

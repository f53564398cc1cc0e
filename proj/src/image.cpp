#include "imaug/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace imaug {

ImageBuffer::ImageBuffer(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image dimensions must be >= 1, got " + std::to_string(w) + "x" +
                                std::to_string(h));
  }
  data.assign(static_cast<std::size_t>(w) * h * kChannels, 0);
}

std::uint8_t clamp_round(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("clamp_round: non-finite intensity");
  }
  // std::round ties away from zero, matching the quantization convention.
  double r = std::round(x);
  if (r < 0.0) return 0;
  if (r > 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

ImageBuffer new_image(int width, int height, std::uint8_t fill) {
  ImageBuffer img(width, height);
  img.data.assign(img.data.size(), fill);
  return img;
}

namespace {

// Floored modulo; result in [0, n) for n > 0.
long floor_mod(long i, long n) {
  long m = i % n;
  return m < 0 ? m + n : m;
}

}  // namespace

std::optional<int> map_index(long i, int n, const FillMode& mode) {
  if (n < 1) {
    throw std::invalid_argument("map_index: axis length must be >= 1");
  }
  switch (mode.variant) {
    case FillVariant::Nearest:
      if (i < 0) return 0;
      if (i >= n) return n - 1;
      return static_cast<int>(i);
    case FillVariant::Wrap:
      return static_cast<int>(floor_mod(i, n));
    case FillVariant::Reflect: {
      // Period 2n: indices reflect with the edge sample duplicated.
      long m = floor_mod(i, 2L * n);
      return static_cast<int>(m < n ? m : 2L * n - 1 - m);
    }
    case FillVariant::Constant:
      if (i < 0 || i >= n) return std::nullopt;
      return static_cast<int>(i);
  }
  return std::nullopt;
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) {
    throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
  }
  ImageBuffer out(out_w, out_h);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double src_y = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(src_y));
    double fy = src_y - y0;
    int y0c = std::min(std::max(y0, 0), img.height - 1);
    int y1c = std::min(std::max(y0 + 1, 0), img.height - 1);
    for (int x = 0; x < out_w; ++x) {
      double src_x = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(src_x));
      double fx = src_x - x0;
      int x0c = std::min(std::max(x0, 0), img.width - 1);
      int x1c = std::min(std::max(x0 + 1, 0), img.width - 1);
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        double top = (1.0 - fx) * img.at(x0c, y0c, c) + fx * img.at(x1c, y0c, c);
        double bot = (1.0 - fx) * img.at(x0c, y1c, c) + fx * img.at(x1c, y1c, c);
        out.at(x, y, c) = clamp_round((1.0 - fy) * top + fy * bot);
      }
    }
  }
  return out;
}

}  // namespace imaug

#include "imaug/photometric.hpp"

#include <cmath>
#include <stdexcept>

namespace imaug {

ImageBuffer adjust_brightness(const ImageBuffer& img, double factor) {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw std::invalid_argument("adjust_brightness: factor must be finite and >= 0");
  }
  ImageBuffer out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    out.data[i] = clamp_round(img.data[i] * factor);
  }
  return out;
}

ImageBuffer isolate_channel(const ImageBuffer& img, Channel channel) {
  const int keep = static_cast<int>(channel);
  ImageBuffer out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += ImageBuffer::kChannels) {
    out.data[i + keep] = img.data[i + keep];
  }
  return out;
}

ImageBuffer convolve3(const ImageBuffer& img, const Kernel3& k, const FillMode& fill) {
  ImageBuffer out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        double acc = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const auto mx = map_index(x + dx, img.width, fill);
            const auto my = map_index(y + dy, img.height, fill);
            const double v = (mx && my) ? img.at(*mx, *my, c) : fill.cval;
            acc += k(dy + 1, dx + 1) * v;
          }
        }
        out.at(x, y, c) = clamp_round(acc);
      }
    }
  }
  return out;
}

Kernel3 box_blur_kernel() {
  return Kernel3::Constant(1.0 / 9.0);
}

Kernel3 gaussian_blur_kernel() {
  Kernel3 k;
  k << 1, 2, 1, 2, 4, 2, 1, 2, 1;
  return k / 16.0;
}

Kernel3 sharpen_kernel() {
  Kernel3 k;
  k << 0, -1, 0, -1, 5, -1, 0, -1, 0;
  return k;
}

}  // namespace imaug

#include "imaug/noise.hpp"

#include <stdexcept>

namespace imaug {

ImageBuffer add_gaussian_noise(const ImageBuffer& img, double variability, RandomStream& rng) {
  if (variability < 0.0) {
    throw std::invalid_argument("add_gaussian_noise: variability must be >= 0");
  }
  const double deviation = variability * rng.next_double();
  return add_gaussian_noise_with_deviation(img, deviation, rng);
}

ImageBuffer add_gaussian_noise_with_deviation(const ImageBuffer& img, double deviation,
                                              RandomStream& rng) {
  if (deviation < 0.0) {
    throw std::invalid_argument("add_gaussian_noise: deviation must be >= 0");
  }
  if (deviation == 0.0) {
    return img;
  }
  ImageBuffer out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    out.data[i] = clamp_round(img.data[i] + deviation * rng.gaussian());
  }
  return out;
}

ImageBuffer add_salt_pepper(const ImageBuffer& img, const SaltPepperParams& p, RandomStream& rng) {
  if (p.amount < 0.0 || p.amount > 1.0 || p.salt_ratio < 0.0 || p.salt_ratio > 1.0) {
    throw std::invalid_argument("add_salt_pepper: amount and salt_ratio must lie in [0,1]");
  }
  ImageBuffer out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!rng.bernoulli(p.amount)) continue;
      const std::uint8_t v = rng.bernoulli(p.salt_ratio) ? 255 : 0;
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        out.at(x, y, c) = v;
      }
    }
  }
  return out;
}

}  // namespace imaug

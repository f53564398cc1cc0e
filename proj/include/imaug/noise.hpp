#pragma once

#include "imaug/image.hpp"
#include "imaug/random.hpp"

namespace imaug {

/// Additive zero-mean Gaussian noise. One per-image deviation is drawn as
/// variability * U[0,1), then every channel value receives an independent
/// N(0, deviation^2) sample, in row-major channel-interleaved order, before a
/// single requantization. Throws std::invalid_argument on negative
/// variability.
ImageBuffer add_gaussian_noise(const ImageBuffer& img, double variability, RandomStream& rng);

/// Same corruption with the per-image deviation imposed by the caller.
ImageBuffer add_gaussian_noise_with_deviation(const ImageBuffer& img, double deviation,
                                              RandomStream& rng);

/// Default per-image deviation scale.
inline constexpr double kDefaultNoiseVariability = 50.0;

struct SaltPepperParams {
  double amount = 0.05;      // fraction of pixels corrupted
  double salt_ratio = 0.5;   // corrupted pixels that become white
};

/// Each pixel is independently corrupted with probability amount; a corrupted
/// pixel becomes white (all channels 255) with probability salt_ratio, else
/// black. Pixels are visited in row-major order, one amount draw per pixel
/// and one salt draw per corrupted pixel.
ImageBuffer add_salt_pepper(const ImageBuffer& img, const SaltPepperParams& p, RandomStream& rng);

}  // namespace imaug

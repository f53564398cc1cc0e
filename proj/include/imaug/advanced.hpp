#pragma once

#include <cstdint>

#include "imaug/image.hpp"
#include "imaug/random.hpp"

namespace imaug {

enum class EraseFill { Random, Mean, Constant };

struct EraseParams {
  double area_lo = 0.02;   // fraction of image area
  double area_hi = 0.4;
  double aspect_lo = 0.3;  // rectangle height / width
  double aspect_hi = 3.33;
  EraseFill fill = EraseFill::Random;
  std::uint8_t cval = 0;
};

struct EraseResult {
  ImageBuffer image;
  bool erased = false;  // false when no feasible rectangle was found
  int x = 0, y = 0, w = 0, h = 0;
};

/// Overwrites one random rectangle whose area fraction and aspect ratio fall
/// in the configured ranges (sides rounded to whole pixels). Sampling retries
/// up to 100 times; if no rectangle fits, the input is returned unchanged
/// with erased = false. Pixels outside the rectangle are untouched.
EraseResult random_erase(const ImageBuffer& img, const EraseParams& p, RandomStream& rng);

struct PatchShuffleParams {
  int n = 2;       // window side in pixels
  double p = 0.05; // per-window shuffle probability
};

struct PatchShuffleResult {
  ImageBuffer image;
  int windows_shuffled = 0;
  int windows_total = 0;
};

/// Tiles the image into non-overlapping n x n windows (edge windows may be
/// smaller) and independently permutes each window's pixels with probability
/// p. Whole RGB triplets move together, so the global histogram and each
/// window's pixel multiset are preserved exactly.
PatchShuffleResult patch_shuffle(const ImageBuffer& img, const PatchShuffleParams& p,
                                 RandomStream& rng);

/// Default output side for sample pairing.
inline constexpr int kDefaultPairingCrop = 224;

/// Averages two independently cropped and possibly mirrored images. Each
/// input first gets a uniformly placed crop x crop cut and an independent
/// 50% horizontal flip (inputs smaller than crop are scaled up on their
/// short side beforehand); the output pixel is the rounded per-channel mean.
/// The caller keeps the first image's label.
ImageBuffer sample_pairing(const ImageBuffer& a, const ImageBuffer& b, int crop,
                           RandomStream& rng);

}  // namespace imaug

#include "imaug/advanced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "imaug/geometry.hpp"

namespace imaug {

EraseResult random_erase(const ImageBuffer& img, const EraseParams& p, RandomStream& rng) {
  if (!(p.area_lo > 0.0) || p.area_lo > p.area_hi || p.area_hi > 1.0 || !(p.aspect_lo > 0.0) ||
      p.aspect_lo > p.aspect_hi) {
    throw std::invalid_argument("random_erase: invalid area or aspect bounds");
  }
  const double area = static_cast<double>(img.width) * img.height;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double frac = rng.uniform(p.area_lo, p.area_hi);
    const double aspect = rng.uniform(p.aspect_lo, p.aspect_hi);  // height / width
    const double target = frac * area;
    const int eh = static_cast<int>(std::lround(std::sqrt(target * aspect)));
    const int ew = static_cast<int>(std::lround(std::sqrt(target / aspect)));
    if (eh < 1 || ew < 1 || eh > img.height || ew > img.width) {
      continue;
    }
    const int ex = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width - ew + 1)));
    const int ey =
        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height - eh + 1)));

    EraseResult res{img, true, ex, ey, ew, eh};

    double mean[3] = {0, 0, 0};
    if (p.fill == EraseFill::Mean) {
      for (std::size_t i = 0; i < img.data.size(); i += ImageBuffer::kChannels) {
        for (int c = 0; c < ImageBuffer::kChannels; ++c) mean[c] += img.data[i + c];
      }
      for (double& m : mean) m /= static_cast<double>(img.pixel_count());
    }
    for (int y = ey; y < ey + eh; ++y) {
      for (int x = ex; x < ex + ew; ++x) {
        for (int c = 0; c < ImageBuffer::kChannels; ++c) {
          switch (p.fill) {
            case EraseFill::Random:
              res.image.at(x, y, c) = static_cast<std::uint8_t>(rng.next_below(256));
              break;
            case EraseFill::Mean:
              res.image.at(x, y, c) = clamp_round(mean[c]);
              break;
            case EraseFill::Constant:
              res.image.at(x, y, c) = p.cval;
              break;
          }
        }
      }
    }
    return res;
  }
  return EraseResult{img, false, 0, 0, 0, 0};
}

PatchShuffleResult patch_shuffle(const ImageBuffer& img, const PatchShuffleParams& p,
                                 RandomStream& rng) {
  if (p.n < 1 || p.p < 0.0 || p.p > 1.0) {
    throw std::invalid_argument("patch_shuffle: n must be >= 1 and p in [0,1]");
  }
  PatchShuffleResult res{img, 0, 0};
  std::vector<std::pair<int, int>> cells;
  for (int wy = 0; wy < img.height; wy += p.n) {
    for (int wx = 0; wx < img.width; wx += p.n) {
      ++res.windows_total;
      if (!rng.bernoulli(p.p)) continue;
      ++res.windows_shuffled;

      const int cw = std::min(p.n, img.width - wx);
      const int ch = std::min(p.n, img.height - wy);
      cells.clear();
      for (int y = wy; y < wy + ch; ++y) {
        for (int x = wx; x < wx + cw; ++x) {
          cells.emplace_back(x, y);
        }
      }
      // Fisher-Yates over whole RGB triplets.
      for (std::size_t i = cells.size() - 1; i > 0; --i) {
        const std::size_t j = rng.next_below(i + 1);
        for (int c = 0; c < ImageBuffer::kChannels; ++c) {
          std::swap(res.image.at(cells[i].first, cells[i].second, c),
                    res.image.at(cells[j].first, cells[j].second, c));
        }
      }
    }
  }
  return res;
}

namespace {

// Scales an image up so both sides reach at least `crop`, preserving aspect.
ImageBuffer ensure_min_side(const ImageBuffer& img, int crop) {
  if (img.width >= crop && img.height >= crop) {
    return img;
  }
  const double s = static_cast<double>(crop) / std::min(img.width, img.height);
  const int nw = std::max(crop, static_cast<int>(std::lround(img.width * s)));
  const int nh = std::max(crop, static_cast<int>(std::lround(img.height * s)));
  return resize_bilinear(img, nw, nh);
}

// Uniformly placed crop followed by an independent 50% horizontal flip.
// Draw order: x, then y, then the flip coin.
ImageBuffer cut_and_maybe_flip(const ImageBuffer& img, int crop, RandomStream& rng) {
  const int x0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width - crop + 1)));
  const int y0 =
      static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height - crop + 1)));
  ImageBuffer out(crop, crop);
  for (int y = 0; y < crop; ++y) {
    for (int x = 0; x < crop; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
      }
    }
  }
  return rng.bernoulli(0.5) ? flip_h(out) : out;
}

}  // namespace

ImageBuffer sample_pairing(const ImageBuffer& a, const ImageBuffer& b, int crop,
                           RandomStream& rng) {
  if (crop < 1) {
    throw std::invalid_argument("sample_pairing: crop must be >= 1");
  }
  // First image fully processed before the second; the order is part of the
  // reproducibility contract.
  const ImageBuffer pa = cut_and_maybe_flip(ensure_min_side(a, crop), crop, rng);
  const ImageBuffer pb = cut_and_maybe_flip(ensure_min_side(b, crop), crop, rng);
  ImageBuffer out(crop, crop);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = clamp_round((pa.data[i] + pb.data[i]) / 2.0);
  }
  return out;
}

}  // namespace imaug

#include "imaug/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace imaug {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

AffineTransform about_center(double cx, double cy, const Eigen::Matrix2d& linear) {
  AffineTransform t;
  t.m.topLeftCorner<2, 2>() = linear;
  Eigen::Vector2d c(cx, cy);
  t.m.block<2, 1>(0, 2) = c - linear * c;
  return t;
}

}  // namespace

AffineTransform make_rotation(double degrees, double cx, double cy) {
  if (!std::isfinite(degrees)) {
    throw std::invalid_argument("make_rotation: non-finite angle");
  }
  const double a = degrees * kDegToRad;
  // Visual counterclockwise with y down is a clockwise rotation in (x, y).
  Eigen::Matrix2d r;
  r << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
  return about_center(cx, cy, r);
}

AffineTransform make_translation(double dx, double dy) {
  if (!std::isfinite(dx) || !std::isfinite(dy)) {
    throw std::invalid_argument("make_translation: non-finite offset");
  }
  AffineTransform t;
  t.m(0, 2) = dx;
  t.m(1, 2) = dy;
  return t;
}

AffineTransform make_shear(double degrees_x, double cx, double cy) {
  if (!std::isfinite(degrees_x) || std::abs(degrees_x) >= 90.0) {
    throw std::invalid_argument("make_shear: |angle| must be < 90 degrees");
  }
  Eigen::Matrix2d s;
  s << 1.0, std::tan(degrees_x * kDegToRad), 0.0, 1.0;
  return about_center(cx, cy, s);
}

AffineTransform make_zoom(double fx, double fy, double cx, double cy) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("make_zoom: factors must be positive");
  }
  // The forward content map scales by 1/f so that the inverse (the sampling
  // map) scales by f, per the stated output-samples-source convention.
  Eigen::Matrix2d s = Eigen::Vector2d(1.0 / fx, 1.0 / fy).asDiagonal();
  return about_center(cx, cy, s);
}

AffineTransform compose(const AffineTransform& a, const AffineTransform& b) {
  AffineTransform t;
  t.m = a.m * b.m;
  t.m.row(2) << 0.0, 0.0, 1.0;
  return t;
}

AffineTransform inverse(const AffineTransform& t) {
  const double det = t.m.topLeftCorner<2, 2>().determinant();
  if (det == 0.0 || !std::isfinite(det)) {
    throw std::invalid_argument("inverse: singular transform");
  }
  AffineTransform r;
  r.m = t.m.inverse();
  r.m.row(2) << 0.0, 0.0, 1.0;
  return r;
}

Eigen::Vector2d image_center(const ImageBuffer& img) {
  return {(img.width - 1) / 2.0, (img.height - 1) / 2.0};
}

namespace {

// Fetches one source sample with boundary handling; nullopt means the
// constant fill value applies.
inline double fetch(const ImageBuffer& img, long xi, long yi, int c, const FillMode& fill) {
  auto mx = map_index(xi, img.width, fill);
  auto my = map_index(yi, img.height, fill);
  if (!mx || !my) return fill.cval;
  return img.at(*mx, *my, c);
}

}  // namespace

ImageBuffer warp_affine(const ImageBuffer& img, const AffineTransform& t, Interp interp,
                        const FillMode& fill) {
  const AffineTransform inv = inverse(t);
  ImageBuffer out(img.width, img.height);
  // Near-singular transforms can throw samples astronomically far out; keep
  // coordinates in a range where floor/lround stay exact and fit in a long.
  static constexpr double kCoordLimit = 1e15;
  const auto bounded = [](double v) { return std::clamp(v, -kCoordLimit, kCoordLimit); };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Eigen::Vector2d src = inv.apply(x, y);
      const double sx = bounded(src.x());
      const double sy = bounded(src.y());
      if (interp == Interp::Nearest) {
        // Ties away from zero, the same convention as quantization.
        const long xi = std::lround(sx);
        const long yi = std::lround(sy);
        for (int c = 0; c < ImageBuffer::kChannels; ++c) {
          out.at(x, y, c) = clamp_round(fetch(img, xi, yi, c, fill));
        }
      } else {
        const double fx0 = std::floor(sx);
        const double fy0 = std::floor(sy);
        const long x0 = static_cast<long>(fx0);
        const long y0 = static_cast<long>(fy0);
        const double wx = sx - fx0;
        const double wy = sy - fy0;
        for (int c = 0; c < ImageBuffer::kChannels; ++c) {
          const double top = (1.0 - wx) * fetch(img, x0, y0, c, fill) +
                             wx * fetch(img, x0 + 1, y0, c, fill);
          const double bot = (1.0 - wx) * fetch(img, x0, y0 + 1, c, fill) +
                             wx * fetch(img, x0 + 1, y0 + 1, c, fill);
          out.at(x, y, c) = clamp_round((1.0 - wy) * top + wy * bot);
        }
      }
    }
  }
  return out;
}

ImageBuffer flip_h(const ImageBuffer& img) {
  ImageBuffer out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
      }
    }
  }
  return out;
}

ImageBuffer flip_v(const ImageBuffer& img) {
  ImageBuffer out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        out.at(x, y, c) = img.at(x, img.height - 1 - y, c);
      }
    }
  }
  return out;
}

}  // namespace imaug

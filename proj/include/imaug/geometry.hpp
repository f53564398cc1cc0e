#pragma once

#include <Eigen/Dense>

#include "imaug/image.hpp"

namespace imaug {

/// Homogeneous 3x3 transform over pixel-center coordinates (x right, y down).
/// The matrix is the forward map of image content: warp_affine inverts it and
/// pulls samples, so translating by +dx moves content dx pixels to the right.
struct AffineTransform {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();

  Eigen::Vector2d apply(double x, double y) const {
    Eigen::Vector3d p = m * Eigen::Vector3d(x, y, 1.0);
    return {p.x(), p.y()};
  }
};

enum class Interp { Bilinear, Nearest };

/// Rotation about (cx, cy). Positive degrees turn content counterclockwise in
/// display orientation (y grows downward).
AffineTransform make_rotation(double degrees, double cx, double cy);

/// (x, y) -> (x + dx, y + dy).
AffineTransform make_translation(double dx, double dy);

/// X-axis shear about (cx, cy): x' = x + tan(degrees_x) * (y - cy), y' = y.
/// Throws std::invalid_argument for |degrees_x| >= 90.
AffineTransform make_shear(double degrees_x, double cx, double cy);

/// Zoom about (cx, cy): an output coordinate (x, y) samples the source at
/// ((x - cx) * fx + cx, (y - cy) * fy + cy), so factors above 1 widen the
/// field of view and factors below 1 magnify. Throws on non-positive factors.
AffineTransform make_zoom(double fx, double fy, double cx, double cy);

/// Applies b first, then a (the matrix product a.m * b.m).
AffineTransform compose(const AffineTransform& a, const AffineTransform& b);

AffineTransform inverse(const AffineTransform& t);

/// Pixel-center coordinates of the image center, ((w-1)/2, (h-1)/2).
Eigen::Vector2d image_center(const ImageBuffer& img);

/// Inverse-mapping warp: each output pixel center is mapped through t back
/// into the source and sampled with the given interpolation; out-of-range
/// samples follow the fill mode. Output dimensions equal the input's.
/// Throws std::invalid_argument for singular transforms.
ImageBuffer warp_affine(const ImageBuffer& img, const AffineTransform& t, Interp interp,
                        const FillMode& fill);

/// Exact column / row reversal, no interpolation.
ImageBuffer flip_h(const ImageBuffer& img);
ImageBuffer flip_v(const ImageBuffer& img);

}  // namespace imaug

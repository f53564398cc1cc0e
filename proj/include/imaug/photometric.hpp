#pragma once

#include <Eigen/Dense>

#include "imaug/image.hpp"

namespace imaug {

/// 3x3 correlation kernel (not flipped).
using Kernel3 = Eigen::Matrix3d;

/// Scales every intensity by factor and requantizes. Factor 0 is absolute
/// dark. Throws std::invalid_argument on negative factors.
ImageBuffer adjust_brightness(const ImageBuffer& img, double factor);

enum class Channel { R = 0, G = 1, B = 2 };

/// Keeps the selected channel, zeroes the other two. Idempotent.
ImageBuffer isolate_channel(const ImageBuffer& img, Channel channel);

/// Per-channel 3x3 correlation; boundaries follow the fill mode.
ImageBuffer convolve3(const ImageBuffer& img, const Kernel3& k, const FillMode& fill);

Kernel3 box_blur_kernel();
Kernel3 gaussian_blur_kernel();
Kernel3 sharpen_kernel();

}  // namespace imaug

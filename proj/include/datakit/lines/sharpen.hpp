#pragma once

#include "datakit/core/image.hpp"

namespace datakit::lines {

struct SharpenConfig {
  int rounds = 3;
  double amount = 1.0;
  /// Gaussian sigma of the blurred copy, in pixels.
  double radius = 1.0;
  /// Clip to [0, 1] after each round. Only meaningful for the float overload;
  /// 8-bit results are always clipped when quantized.
  bool clip = true;

  /// Throws RangeError on rounds < 1, amount < 0 or radius <= 0.
  void validate() const;
};

/// One round: img + amount * (img - gaussian(img, radius)). `rounds` is ignored.
RasterImage unsharp(const RasterImage& img, const SharpenConfig& cfg);
FloatImage unsharp(const FloatImage& img, const SharpenConfig& cfg);

/// `cfg.rounds`-fold composition of unsharp.
RasterImage sharpen_n(const RasterImage& img, const SharpenConfig& cfg);

}  // namespace datakit::lines

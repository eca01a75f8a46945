#pragma once

#include "datakit/core/edge_map.hpp"
#include "datakit/core/image.hpp"

namespace datakit::lines {

/// Extended difference-of-Gaussians. The filter runs on inverted luma, so
/// dark strokes give a positive response.
struct XdogParams {
  double sigma = 1.0;
  double k = 1.6;
  double tau = 0.95;
  double phi = 15.0;
  double epsilon = 0.1;
  /// Soft-threshold level at or above which a pixel is a line.
  double line_level = 0.5;

  void validate() const;
};

/// Soft response T in [0, 1]: 1 where D >= epsilon, 1 + tanh(phi * (D - epsilon)) below.
GrayPlane xdog_response(const RasterImage& img, const XdogParams& p);

EdgeMap xdog(const RasterImage& img, const XdogParams& p);

}  // namespace datakit::lines

#pragma once

#include "datakit/core/image.hpp"
#include "datakit/core/random.hpp"
#include "datakit/degrade/kernels.hpp"
#include "datakit/degrade/plan.hpp"

namespace datakit::degrade {

/// True 2-D convolution with reflect-101 borders; dimensions unchanged.
FloatImage apply_blur(const FloatImage& img, const BlurKernel& k);
RasterImage apply_blur(const RasterImage& img, const BlurKernel& k);

/// Additive Gaussian or Poisson shot noise, clipped to [0, 1].
FloatImage add_noise(const FloatImage& img, const NoiseSpec& n, RandomStream& stream);
RasterImage add_noise(const RasterImage& img, const NoiseSpec& n, RandomStream& stream);

/// Output dimensions round(dim * factor); throws DimensionError below 1.
FloatImage apply_resize(const FloatImage& img, const ResizeStep& step);
RasterImage apply_resize(const RasterImage& img, const ResizeStep& step);

FloatImage resize_to(const FloatImage& img, int width, int height, Interp interp);

}  // namespace datakit::degrade

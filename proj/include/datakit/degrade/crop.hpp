#pragma once

#include <vector>

#include "datakit/core/image.hpp"
#include "datakit/core/random.hpp"

namespace datakit::degrade {

inline constexpr int kDefaultHrPatch = 256;
inline constexpr int kDefaultScale = 4;

struct PatchPair {
  RasterImage hr;
  RasterImage lr;
  int hr_x = 0;
  int hr_y = 0;
};

/// Aligned random crops: the LR offset is uniform over the valid range and
/// the HR offset is that offset times `scale`. Throws DimensionError when
/// the sizes do not line up or the image is smaller than the patch.
std::vector<PatchPair> crop_pairs(const RasterImage& hr, const RasterImage& lr, int hr_patch, int scale,
                                  RandomStream& stream, int count = 1);

}  // namespace datakit::degrade

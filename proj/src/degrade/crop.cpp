#include "datakit/degrade/crop.hpp"

#include "datakit/core/error.hpp"

namespace datakit::degrade {

std::vector<PatchPair> crop_pairs(const RasterImage& hr, const RasterImage& lr, int hr_patch, int scale,
                                  RandomStream& stream, int count) {
  if (scale < 1) throw DimensionError("scale must be at least 1");
  if (hr_patch < scale || hr_patch % scale != 0) {
    throw DimensionError("HR patch " + std::to_string(hr_patch) + " is not a multiple of scale " + std::to_string(scale));
  }
  if (hr.width() != lr.width() * scale || hr.height() != lr.height() * scale) {
    throw DimensionError("HR size must equal LR size times scale");
  }
  if (hr.width() < hr_patch || hr.height() < hr_patch) {
    throw DimensionError("image " + std::to_string(hr.width()) + "x" + std::to_string(hr.height()) +
                         " is smaller than the " + std::to_string(hr_patch) + " px patch");
  }
  if (count < 1) throw RangeError("patch count must be at least 1");

  const int lr_patch = hr_patch / scale;
  const int max_x = lr.width() - lr_patch;
  const int max_y = lr.height() - lr_patch;
  // A single valid position yields a single pair however many were asked for.
  if (max_x == 0 && max_y == 0) count = 1;

  std::vector<PatchPair> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int lx = static_cast<int>(stream.uniform_int(0, max_x));
    const int ly = static_cast<int>(stream.uniform_int(0, max_y));
    pairs.push_back({crop(hr, lx * scale, ly * scale, hr_patch, hr_patch), crop(lr, lx, ly, lr_patch, lr_patch),
                     lx * scale, ly * scale});
  }
  return pairs;
}

}  // namespace datakit::degrade

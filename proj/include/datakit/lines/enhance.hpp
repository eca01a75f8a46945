#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "datakit/core/edge_map.hpp"
#include "datakit/core/image.hpp"
#include "datakit/lines/edge_cleanup.hpp"
#include "datakit/lines/sharpen.hpp"
#include "datakit/lines/xdog.hpp"

namespace datakit::lines {

struct EnhanceConfig {
  SharpenConfig sharpen;
  XdogParams xdog;
  std::size_t outlier_threshold = kDefaultOutlierThreshold;
  int dilate_passes = 1;

  void validate() const;
};

/// Per-pixel select: sharp where the map is true, gt elsewhere.
RasterImage composite_pseudo_gt(const RasterImage& gt, const RasterImage& sharp, const EdgeMap& map);

struct EnhanceTrace {
  RasterImage sharp;
  EdgeMap raw;
  EdgeMap filtered;
};

struct EnhanceResult {
  RasterImage pseudo_gt;
  EdgeMap map;
  std::optional<EnhanceTrace> trace;
};

EnhanceResult enhance(const RasterImage& gt, const EnhanceConfig& cfg, bool with_trace = false);

/// Writes <stem>_sharp.png, _xdog.png, _filtered.png, _dilated.png and
/// _pseudo_gt.png into `dir`. Needs a result computed with tracing.
void write_trace(const EnhanceResult& r, const std::filesystem::path& dir, const std::string& stem);

/// Black-and-white rendering of a map, white for true.
RasterImage render_map(const EdgeMap& m);

}  // namespace datakit::lines

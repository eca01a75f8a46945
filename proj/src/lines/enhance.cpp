#include "datakit/lines/enhance.hpp"

#include "datakit/core/error.hpp"
#include "datakit/core/image_io.hpp"

namespace datakit::lines {

void EnhanceConfig::validate() const {
  sharpen.validate();
  xdog.validate();
  if (outlier_threshold < 1) throw RangeError("outlier threshold must be at least 1");
  if (dilate_passes < 0) throw RangeError("dilate passes must be non-negative");
}

RasterImage composite_pseudo_gt(const RasterImage& gt, const RasterImage& sharp, const EdgeMap& map) {
  if (!gt.same_shape(sharp) || gt.width() != map.width() || gt.height() != map.height()) {
    throw DimensionError("composite: gt, sharp and map must share dimensions");
  }
  RasterImage out = gt;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!map.get(x, y)) continue;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = sharp.at(x, y, c);
    }
  }
  return out;
}

EnhanceResult enhance(const RasterImage& gt, const EnhanceConfig& cfg, bool with_trace) {
  cfg.validate();
  auto sharp = sharpen_n(gt, cfg.sharpen);
  auto raw = xdog(sharp, cfg.xdog);
  auto filtered = outlier_filter(raw, cfg.outlier_threshold);
  auto map = passive_dilate(filtered, cfg.dilate_passes);
  EnhanceResult r{composite_pseudo_gt(gt, sharp, map), std::move(map), std::nullopt};
  if (with_trace) r.trace = EnhanceTrace{std::move(sharp), std::move(raw), std::move(filtered)};
  return r;
}

RasterImage render_map(const EdgeMap& m) {
  RasterImage out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const std::uint8_t v = m.get(x, y) ? 255 : 0;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = v;
    }
  }
  return out;
}

void write_trace(const EnhanceResult& r, const std::filesystem::path& dir, const std::string& stem) {
  if (!r.trace) throw ConfigError("write_trace needs a result computed with tracing enabled");
  const auto save = [&](const RasterImage& img, const char* suffix) {
    save_image(img, dir / (stem + suffix + ".png"), ImageFormat::png);
  };
  save(r.trace->sharp, "_sharp");
  save(render_map(r.trace->raw), "_xdog");
  save(render_map(r.trace->filtered), "_filtered");
  save(render_map(r.map), "_dilated");
  save(r.pseudo_gt, "_pseudo_gt");
}

}  // namespace datakit::lines

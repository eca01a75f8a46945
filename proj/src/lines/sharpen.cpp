#include "datakit/lines/sharpen.hpp"

#include <algorithm>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit::lines {

void SharpenConfig::validate() const {
  if (rounds < 1) throw RangeError("sharpen rounds must be at least 1");
  if (!(amount >= 0.0)) throw RangeError("unsharp amount must be non-negative");
  if (!(radius > 0.0)) throw RangeError("unsharp radius must be positive");
}

FloatImage unsharp(const FloatImage& img, const SharpenConfig& cfg) {
  cfg.validate();
  cv::Mat blurred;
  cv::GaussianBlur(as_mat(img), blurred, cv::Size(0, 0), cfg.radius, cfg.radius, cv::BORDER_REFLECT_101);
  FloatImage out(img.width(), img.height());
  auto src = img.samples();
  auto dst = out.samples();
  const auto* blur = blurred.ptr<float>();
  const auto amount = static_cast<float>(cfg.amount);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const float v = src[i] + amount * (src[i] - blur[i]);
    dst[i] = cfg.clip ? std::clamp(v, 0.0f, 1.0f) : v;
  }
  return out;
}

RasterImage unsharp(const RasterImage& img, const SharpenConfig& cfg) { return denormalize(unsharp(normalize(img), cfg)); }

RasterImage sharpen_n(const RasterImage& img, const SharpenConfig& cfg) {
  cfg.validate();
  RasterImage out = unsharp(img, cfg);
  for (int i = 1; i < cfg.rounds; ++i) out = unsharp(out, cfg);
  return out;
}

}  // namespace datakit::lines

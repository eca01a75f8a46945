#include "datakit/lines/xdog.hpp"

#include <cmath>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit::lines {

void XdogParams::validate() const {
  if (!(sigma > 0.0)) throw RangeError("xdog sigma must be positive");
  if (!(k > 1.0)) throw RangeError("xdog k must exceed 1");
  if (!(phi > 0.0)) throw RangeError("xdog phi must be positive");
  if (!(line_level > 0.0 && line_level <= 1.0)) throw RangeError("xdog line_level must lie in (0, 1]");
}

GrayPlane xdog_response(const RasterImage& img, const XdogParams& p) {
  p.validate();
  GrayPlane ink = luma(img);
  for (auto& v : ink.samples()) v = 1.0f - v;

  cv::Mat narrow, wide;
  cv::GaussianBlur(as_mat(ink), narrow, cv::Size(0, 0), p.sigma, p.sigma, cv::BORDER_REFLECT_101);
  cv::GaussianBlur(as_mat(ink), wide, cv::Size(0, 0), p.k * p.sigma, p.k * p.sigma, cv::BORDER_REFLECT_101);

  GrayPlane out(img.width(), img.height());
  auto dst = out.samples();
  const auto* n = narrow.ptr<float>();
  const auto* w = wide.ptr<float>();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double d = n[i] - p.tau * w[i];
    dst[i] = d >= p.epsilon ? 1.0f : static_cast<float>(1.0 + std::tanh(p.phi * (d - p.epsilon)));
  }
  return out;
}

EdgeMap xdog(const RasterImage& img, const XdogParams& p) {
  const auto t = xdog_response(img, p);
  EdgeMap m(img.width(), img.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) m.set(x, y, t.at(x, y) >= p.line_level);
  }
  return m;
}

}  // namespace datakit::lines

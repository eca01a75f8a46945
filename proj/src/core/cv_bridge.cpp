#include "datakit/core/cv_bridge.hpp"

#include <cstring>

#include "datakit/core/error.hpp"

namespace datakit {

namespace {

void require(const cv::Mat& m, int type, const char* what) {
  if (m.type() != type) throw DimensionError(std::string("cv::Mat has wrong type for ") + what);
}

template <typename Image>
Image copy_rows(const cv::Mat& m, Image img, std::size_t row_bytes) {
  auto* dst = reinterpret_cast<std::uint8_t*>(img.data());
  for (int y = 0; y < m.rows; ++y) std::memcpy(dst + y * row_bytes, m.ptr(y), row_bytes);
  return img;
}

}  // namespace

RasterImage raster_from_mat(const cv::Mat& m) {
  require(m, CV_8UC3, "RasterImage");
  return copy_rows(m, RasterImage(m.cols, m.rows), static_cast<std::size_t>(m.cols) * 3);
}

FloatImage float_from_mat(const cv::Mat& m) {
  require(m, CV_32FC3, "FloatImage");
  return copy_rows(m, FloatImage(m.cols, m.rows), static_cast<std::size_t>(m.cols) * 3 * sizeof(float));
}

GrayPlane plane_from_mat(const cv::Mat& m) {
  require(m, CV_32FC1, "GrayPlane");
  return copy_rows(m, GrayPlane(m.cols, m.rows), static_cast<std::size_t>(m.cols) * sizeof(float));
}

}  // namespace datakit

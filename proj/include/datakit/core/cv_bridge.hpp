#pragma once

// Zero-copy views between the toolkit's image types and cv::Mat. Channel
// order stays RGB; only file I/O swaps to OpenCV's BGR.

#include <opencv2/core.hpp>

#include "datakit/core/image.hpp"

namespace datakit {

inline cv::Mat as_mat(RasterImage& img) { return {img.height(), img.width(), CV_8UC3, img.data()}; }
inline cv::Mat as_mat(const RasterImage& img) {
  return {img.height(), img.width(), CV_8UC3, const_cast<std::uint8_t*>(img.data())};
}
inline cv::Mat as_mat(FloatImage& img) { return {img.height(), img.width(), CV_32FC3, img.data()}; }
inline cv::Mat as_mat(const FloatImage& img) {
  return {img.height(), img.width(), CV_32FC3, const_cast<float*>(img.data())};
}
inline cv::Mat as_mat(GrayPlane& p) { return {p.height(), p.width(), CV_32FC1, p.data()}; }
inline cv::Mat as_mat(const GrayPlane& p) {
  return {p.height(), p.width(), CV_32FC1, const_cast<float*>(p.data())};
}

/// Deep copies; `m` must be continuous-compatible of the matching type.
RasterImage raster_from_mat(const cv::Mat& m);
FloatImage float_from_mat(const cv::Mat& m);
GrayPlane plane_from_mat(const cv::Mat& m);

}  // namespace datakit

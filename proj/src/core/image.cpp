#include "datakit/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "datakit/core/edge_map.hpp"
#include "datakit/core/error.hpp"

namespace datakit {

namespace {

std::size_t checked_area(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  return static_cast<std::size_t>(width) * height * channels;
}

}  // namespace

RasterImage::RasterImage(int width, int height)
    : width_(width), height_(height), pixels_(checked_area(width, height, kChannels), 0) {}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != checked_area(width, height, kChannels)) {
    throw DimensionError("pixel buffer length does not match width*height*3");
  }
}

RasterImage RasterImage::filled(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RasterImage img(width, height);
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    px[i] = r;
    px[i + 1] = g;
    px[i + 2] = b;
  }
  return img;
}

FloatImage::FloatImage(int width, int height)
    : width_(width), height_(height), samples_(checked_area(width, height, kChannels), 0.0f) {}

FloatImage::FloatImage(int width, int height, std::vector<float> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (samples_.size() != checked_area(width, height, kChannels)) {
    throw DimensionError("sample buffer length does not match width*height*3");
  }
}

GrayPlane::GrayPlane(int width, int height, float fill)
    : width_(width), height_(height), samples_(checked_area(width, height, 1), fill) {}

EdgeMap::EdgeMap(int width, int height, bool fill)
    : width_(width), height_(height), bits_(checked_area(width, height, 1), fill ? 1 : 0) {}

std::size_t EdgeMap::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool EdgeMap::subset_of(const EdgeMap& other) const noexcept {
  if (width_ != other.width_ || height_ != other.height_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

std::uint8_t to_u8(float v) noexcept {
  const float scaled = std::clamp(v, 0.0f, 1.0f) * 255.0f;
  // std::lround rounds half away from zero.
  return static_cast<std::uint8_t>(std::lround(scaled));
}

FloatImage normalize(const RasterImage& img) {
  FloatImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.samples();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(src[i]) / 255.0f;
  return out;
}

RasterImage denormalize(const FloatImage& img) {
  RasterImage out(img.width(), img.height());
  auto src = img.samples();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_u8(src[i]);
  return out;
}

GrayPlane luma(const FloatImage& img) {
  GrayPlane out(img.width(), img.height());
  auto src = img.samples();
  auto dst = out.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = 0.299f * src[3 * i] + 0.587f * src[3 * i + 1] + 0.114f * src[3 * i + 2];
  }
  return out;
}

GrayPlane luma(const RasterImage& img) { return luma(normalize(img)); }

RasterImage crop(const RasterImage& img, int x, int y, int width, int height) {
  if (x < 0 || y < 0 || width < 1 || height < 1 || x + width > img.width() || y + height > img.height()) {
    throw DimensionError("crop rectangle outside image");
  }
  RasterImage out(width, height);
  const std::size_t row = static_cast<std::size_t>(width) * 3;
  for (int r = 0; r < height; ++r) {
    const auto* src = img.data() + (static_cast<std::size_t>(y + r) * img.width() + x) * 3;
    std::copy(src, src + row, out.data() + r * row);
  }
  return out;
}

double psnr(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) throw DimensionError("psnr: image dimensions differ");
  double sse = 0.0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - pb[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace datakit

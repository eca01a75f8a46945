#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace datakit {

/// 8-bit interleaved RGB image. Width and height are at least 1 and the
/// buffer always holds width * height * 3 bytes.
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage(int width, int height);
  RasterImage(int width, int height, std::vector<std::uint8_t> pixels);
  /// Image filled with one RGB color.
  static RasterImage filled(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return kChannels; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  const std::uint8_t* data() const noexcept { return pixels_.data(); }
  std::uint8_t* data() noexcept { return pixels_.data(); }

  std::uint8_t at(int x, int y, int c) const noexcept {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::uint8_t& at(int x, int y, int c) noexcept {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }

  bool same_shape(const RasterImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Real-valued RGB image with samples nominally in [0, 1]. Filtering
/// stages may temporarily leave the range; conversion back to 8 bits clips.
class FloatImage {
 public:
  static constexpr int kChannels = 3;

  FloatImage(int width, int height);
  FloatImage(int width, int height, std::vector<float> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }

  std::span<const float> samples() const noexcept { return samples_; }
  std::span<float> samples() noexcept { return samples_; }
  const float* data() const noexcept { return samples_.data(); }
  float* data() noexcept { return samples_.data(); }

  float at(int x, int y, int c) const noexcept {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  float& at(int x, int y, int c) noexcept {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }

  friend bool operator==(const FloatImage&, const FloatImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<float> samples_;
};

/// Single-channel real-valued plane (grayscale, filter responses).
class GrayPlane {
 public:
  GrayPlane(int width, int height, float fill = 0.0f);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const float> samples() const noexcept { return samples_; }
  std::span<float> samples() noexcept { return samples_; }
  float* data() noexcept { return samples_.data(); }
  const float* data() const noexcept { return samples_.data(); }

  float at(int x, int y) const noexcept { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  float& at(int x, int y) noexcept { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

 private:
  int width_;
  int height_;
  std::vector<float> samples_;
};

/// 8-bit value to [0, 1].
FloatImage normalize(const RasterImage& img);
/// [0, 1] back to 8 bits: clip, scale by 255, round half away from zero.
RasterImage denormalize(const FloatImage& img);
std::uint8_t to_u8(float v) noexcept;

/// Copies the rectangle at (x, y); throws DimensionError if it leaves the image.
RasterImage crop(const RasterImage& img, int x, int y, int width, int height);

/// Peak signal-to-noise ratio in dB over all channels; infinity for equal images.
double psnr(const RasterImage& a, const RasterImage& b);

/// Rec.601 luma of the normalized image.
GrayPlane luma(const FloatImage& img);
GrayPlane luma(const RasterImage& img);

}  // namespace datakit

#include "datakit/degrade/ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit::degrade {

namespace {

int cv_interp(Interp i) {
  switch (i) {
    case Interp::area: return cv::INTER_AREA;
    case Interp::bilinear: return cv::INTER_LINEAR;
    case Interp::bicubic: return cv::INTER_CUBIC;
  }
  return cv::INTER_CUBIC;
}

void clip01(FloatImage& img) {
  for (auto& v : img.samples()) v = std::clamp(v, 0.0f, 1.0f);
}

/// Shot noise on a plane of values in [0, 1], following Real-ESRGAN: the
/// plane is quantized to 8 bits and the photon count is the next power of
/// two above the number of distinct levels.
std::vector<float> poisson_noise(const std::vector<float>& plane, RandomStream& stream) {
  std::vector<int> levels(plane.size());
  std::array<bool, 256> seen{};
  for (std::size_t i = 0; i < plane.size(); ++i) {
    levels[i] = static_cast<int>(std::lround(std::clamp(plane[i] * 255.0f, 0.0f, 255.0f)));
    seen[static_cast<std::size_t>(levels[i])] = true;
  }
  const auto unique = std::count(seen.begin(), seen.end(), true);
  const double vals = std::exp2(std::ceil(std::log2(static_cast<double>(unique))));

  std::array<std::optional<std::poisson_distribution<long>>, 256> dists;
  std::vector<float> noise(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const auto l = static_cast<std::size_t>(levels[i]);
    const double v = static_cast<double>(l) / 255.0;
    const double mean = v * vals;
    double sample = 0.0;
    if (mean > 0.0) {
      if (!dists[l]) dists[l].emplace(mean);
      sample = static_cast<double>((*dists[l])(stream));
    }
    noise[i] = static_cast<float>(sample / vals - v);
  }
  return noise;
}

}  // namespace

FloatImage apply_blur(const FloatImage& img, const BlurKernel& k) {
  cv::Mat kernel(k.size, k.size, CV_32F);
  // filter2D correlates; flipping the kernel makes it a convolution.
  for (int y = 0; y < k.size; ++y) {
    for (int x = 0; x < k.size; ++x) kernel.at<float>(k.size - 1 - y, k.size - 1 - x) = static_cast<float>(k.at(x, y));
  }
  cv::Mat out;
  cv::filter2D(as_mat(img), out, CV_32F, kernel, cv::Point(-1, -1), 0.0, cv::BORDER_REFLECT_101);
  return float_from_mat(out);
}

RasterImage apply_blur(const RasterImage& img, const BlurKernel& k) {
  return denormalize(apply_blur(normalize(img), k));
}

FloatImage add_noise(const FloatImage& img, const NoiseSpec& n, RandomStream& stream) {
  FloatImage out = img;
  auto px = out.samples();
  const std::size_t pixels = px.size() / 3;
  if (n.family == NoiseFamily::gaussian) {
    if (n.strength == 0.0) return out;
    std::normal_distribution<double> normal(0.0, n.strength);
    if (n.gray) {
      for (std::size_t i = 0; i < pixels; ++i) {
        const auto d = static_cast<float>(normal(stream));
        for (int c = 0; c < 3; ++c) px[3 * i + c] += d;
      }
    } else {
      for (auto& v : px) v += static_cast<float>(normal(stream));
    }
  } else {
    if (n.gray) {
      const auto g = luma(img);
      const auto noise = poisson_noise({g.samples().begin(), g.samples().end()}, stream);
      for (std::size_t i = 0; i < pixels; ++i) {
        for (int c = 0; c < 3; ++c) px[3 * i + c] += noise[i] * static_cast<float>(n.strength);
      }
    } else {
      const auto noise = poisson_noise({px.begin(), px.end()}, stream);
      for (std::size_t i = 0; i < px.size(); ++i) px[i] += noise[i] * static_cast<float>(n.strength);
    }
  }
  clip01(out);
  return out;
}

RasterImage add_noise(const RasterImage& img, const NoiseSpec& n, RandomStream& stream) {
  return denormalize(add_noise(normalize(img), n, stream));
}

FloatImage resize_to(const FloatImage& img, int width, int height, Interp interp) {
  if (width < 1 || height < 1) {
    throw DimensionError("resize target " + std::to_string(width) + "x" + std::to_string(height) + " is degenerate");
  }
  if (width == img.width() && height == img.height()) return img;
  cv::Mat out;
  cv::resize(as_mat(img), out, cv::Size(width, height), 0, 0, cv_interp(interp));
  return float_from_mat(out);
}

FloatImage apply_resize(const FloatImage& img, const ResizeStep& step) {
  if (!(step.factor > 0.0)) throw DimensionError("resize factor must be positive");
  const auto w = static_cast<int>(std::lround(img.width() * step.factor));
  const auto h = static_cast<int>(std::lround(img.height() * step.factor));
  return resize_to(img, w, h, step.interp);
}

RasterImage apply_resize(const RasterImage& img, const ResizeStep& step) {
  return denormalize(apply_resize(normalize(img), step));
}

}  // namespace datakit::degrade

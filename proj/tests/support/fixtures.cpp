#include "fixtures.hpp"

#include <atomic>
#include <cmath>
#include <random>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"

namespace datakit::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

RasterImage gradient_image(int width, int height) {
  RasterImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>(255 * x / std::max(1, width - 1));
      img.at(x, y, 1) = static_cast<std::uint8_t>(255 * y / std::max(1, height - 1));
      img.at(x, y, 2) = static_cast<std::uint8_t>(128 + 100 * std::sin(0.05 * (x + y)));
    }
  }
  return img;
}

RasterImage noise_image(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  RasterImage img(width, height);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(dist(rng));
  return img;
}

RasterImage anime_scene(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> color(40, 250);
  std::uniform_int_distribution<int> px(0, width - 1);
  std::uniform_int_distribution<int> py(0, height - 1);
  std::uniform_int_distribution<int> radius(std::max(2, width / 20), std::max(3, width / 5));

  cv::Mat m(height, width, CV_8UC3, cv::Scalar(color(rng), color(rng), color(rng)));
  // Sky/ground split.
  cv::rectangle(m, cv::Point(0, height * 2 / 3), cv::Point(width, height), cv::Scalar(color(rng), color(rng), 90),
                cv::FILLED);
  for (int i = 0; i < 6; ++i) {
    const cv::Point c(px(rng), py(rng));
    const int r = radius(rng);
    const cv::Scalar fill(color(rng), color(rng), color(rng));
    if (i % 2 == 0) {
      cv::circle(m, c, r, fill, cv::FILLED, cv::LINE_AA);
      cv::circle(m, c, r, cv::Scalar(20, 20, 30), 2, cv::LINE_AA);
    } else {
      cv::rectangle(m, c, c + cv::Point(r, r / 2 + 1), fill, cv::FILLED);
      cv::rectangle(m, c, c + cv::Point(r, r / 2 + 1), cv::Scalar(20, 20, 30), 1);
    }
  }
  for (int i = 0; i < 4; ++i) {
    cv::line(m, cv::Point(px(rng), py(rng)), cv::Point(px(rng), py(rng)), cv::Scalar(15, 15, 15), 1, cv::LINE_AA);
  }
  // Soft shading gradient, as in cel shadows.
  for (int y = 0; y < height; ++y) {
    auto* row = m.ptr<cv::Vec3b>(y);
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) row[x][c] = cv::saturate_cast<std::uint8_t>(row[x][c] - 20.0 * y / height);
    }
  }
  return raster_from_mat(m);
}

RasterImage line_art_card(int width, int height, int variant) {
  cv::Mat m(height, width, CV_8UC3, cv::Scalar(255, 255, 255));
  const cv::Scalar ink(0, 0, 0);
  const int thick = 1 + variant % 3;
  cv::line(m, cv::Point(width / 10, height / 8), cv::Point(width * 9 / 10, height / 8 + variant * 3), ink, thick);
  cv::circle(m, cv::Point(width / 2, height / 2), std::min(width, height) / 4, ink, thick);
  cv::ellipse(m, cv::Point(width / 3, height * 3 / 4), cv::Size(width / 6, height / 10), 15.0 * variant, 0, 270,
              ink, thick);
  cv::line(m, cv::Point(width / 8, height * 9 / 10), cv::Point(width * 7 / 8, height / 3), ink, 1);
  // Flat pastel fill inside the circle, as cel coloring.
  cv::floodFill(m, cv::Point(width / 2, height / 2), cv::Scalar(200, 220, 250 - 10 * variant));
  return raster_from_mat(m);
}

EdgeMap random_map(int width, int height, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on(density);
  EdgeMap m(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) m.set(x, y, on(rng));
  }
  return m;
}

}  // namespace datakit::testing

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "datakit/core/edge_map.hpp"
#include "datakit/core/image.hpp"

namespace datakit::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "datakit");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

RasterImage gradient_image(int width, int height);
/// Uniform white noise in every channel.
RasterImage noise_image(int width, int height, std::uint64_t seed);
/// Flat-colored regions with dark outlines and a few thin strokes.
RasterImage anime_scene(int width, int height, std::uint64_t seed);
/// White card with 1-3 px black strokes (lines, circle, curve).
RasterImage line_art_card(int width, int height, int variant);
/// Random binary map with the given true density.
EdgeMap random_map(int width, int height, double density, std::uint64_t seed);

}  // namespace datakit::testing

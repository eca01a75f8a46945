#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "datakit/core/image.hpp"

namespace datakit::testing {

struct ClipOptions {
  int width = 320;
  int height = 180;
  int frames = 120;
  int gop = 30;
  /// Disables scene-cut keyframes so I-frames land exactly every `gop` frames.
  bool fixed_gop = true;
  int crf = 23;
  std::string preset = "medium";
  std::string codec = "libx264";
};

using FrameGenerator = std::function<RasterImage(int frame_index)>;

/// Encodes frames from `gen` into an MP4 file.
void write_clip(const std::filesystem::path& path, const ClipOptions& opts, const FrameGenerator& gen);

/// Static anime-like background with a few shapes moving across it.
FrameGenerator moving_scene(int width, int height, std::uint64_t seed);

/// Multi-frame oracle: encodes `frames` identical copies of `img` as one
/// H.264 stream and returns decoded frame `take_index`.
RasterImage multi_frame_h264_frame(const RasterImage& img, int crf, const std::string& preset, int frames,
                                   int take_index);

}  // namespace datakit::testing

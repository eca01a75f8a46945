#pragma once

#include <cstddef>
#include <vector>

#include "datakit/core/image.hpp"
#include "datakit/curation/complexity.hpp"
#include "datakit/curation/frames.hpp"

namespace datakit::curation {

inline constexpr std::size_t kDefaultTopK = 10;
inline constexpr int kTargetHeight = 720;

struct ScoredFrame {
  FrameRecord record;
  ComplexityScore score;
};

/// Keeps the k highest-scoring frames of every video. The result is ordered
/// by descending score, then ascending frame index, then video id. Throws
/// ConfigError if the scores come from more than one scorer.
std::vector<ScoredFrame> select_top_k(const std::vector<ScoredFrame>& scored, std::size_t k = kDefaultTopK);

/// Bicubic resize to height 720 with the aspect ratio kept. Images already
/// 720 tall are returned unchanged.
RasterImage rescale_720(const RasterImage& img);

}  // namespace datakit::curation

#include "datakit/curation/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit::curation {

std::vector<ScoredFrame> select_top_k(const std::vector<ScoredFrame>& scored, std::size_t k) {
  for (const auto& s : scored) {
    if (s.score.scorer_id != scored.front().score.scorer_id) {
      throw ConfigError("select_top_k: scores from different scorers (" + scored.front().score.scorer_id + ", " +
                        s.score.scorer_id + ") cannot be compared");
    }
  }
  std::vector<ScoredFrame> sorted = scored;
  std::stable_sort(sorted.begin(), sorted.end(), [](const ScoredFrame& a, const ScoredFrame& b) {
    if (a.score.value != b.score.value) return a.score.value > b.score.value;
    if (a.record.frame_index != b.record.frame_index) return a.record.frame_index < b.record.frame_index;
    return a.record.video_id < b.record.video_id;
  });
  std::map<std::string, std::size_t> taken;
  std::vector<ScoredFrame> out;
  for (auto& s : sorted) {
    auto& n = taken[s.record.video_id];
    if (n >= k) continue;
    ++n;
    out.push_back(std::move(s));
  }
  return out;
}

RasterImage rescale_720(const RasterImage& img) {
  if (img.height() == kTargetHeight) return img;
  const double w = static_cast<double>(img.width()) * kTargetHeight / img.height();
  const int width = std::max(1, static_cast<int>(std::lround(w)));
  cv::Mat out;
  cv::resize(as_mat(img), out, cv::Size(width, kTargetHeight), 0, 0, cv::INTER_CUBIC);
  return raster_from_mat(out);
}

}  // namespace datakit::curation

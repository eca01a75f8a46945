#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "datakit/cli/csv.hpp"
#include "datakit/cli/run_config.hpp"
#include "datakit/curation/frames.hpp"

namespace datakit::cli {

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins over [lo, hi]; values equal to hi land in the last bin
/// and values outside the range are dropped.
std::vector<HistogramBin> histogram(const std::vector<double>& values, double lo, double hi, int bins);

struct VideoStats {
  std::string video_id;
  std::vector<curation::FrameRecord> frames;
  std::optional<curation::FrameSizeReport> report;
  /// Set when the report could not be computed.
  std::string notice;
};

struct StatsReport {
  std::vector<VideoStats> videos;
  std::vector<double> scores;
  std::vector<HistogramBin> score_histogram;
  std::string summary;
  std::size_t failures = 0;
};

/// Inputs ending in .jsonl are read as manifests and contribute complexity
/// scores; anything else is probed as a video. Writes frame_sizes.csv,
/// frame_size_summary.csv, frame_size_histogram.csv, score_histogram.csv and
/// summary.txt into cfg.out_dir.
StatsReport cmd_stats(const std::vector<std::filesystem::path>& inputs, const RunConfig& cfg);

}  // namespace datakit::cli

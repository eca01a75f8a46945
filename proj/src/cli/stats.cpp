#include "datakit/cli/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "datakit/core/error.hpp"
#include "datakit/core/manifest.hpp"

namespace datakit::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void append_histogram(std::vector<CsvRow>& rows, const std::string& label, const std::vector<HistogramBin>& bins) {
  for (const auto& b : bins) rows.push_back({label, num(b.lo), num(b.hi), std::to_string(b.count)});
}

}  // namespace

std::vector<HistogramBin> histogram(const std::vector<double>& values, double lo, double hi, int bins) {
  if (bins < 1) throw RangeError("histogram needs at least one bin");
  if (!(hi >= lo)) throw RangeError("histogram range is inverted");
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  const double width = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) {
    out[i].lo = lo + width * i;
    out[i].hi = i + 1 == bins ? hi : lo + width * (i + 1);
  }
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto idx = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
    out[static_cast<std::size_t>(std::min(idx, bins - 1))].count++;
  }
  return out;
}

StatsReport cmd_stats(const std::vector<fs::path>& inputs, const RunConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  StatsReport report;
  std::ostringstream summary;

  for (const auto& in : inputs) {
    if (in.extension() == ".jsonl") {
      try {
        const auto m = read_manifest(in);
        for (const auto& e : m.entries) {
          if (e.complexity_score && !e.rejected) report.scores.push_back(*e.complexity_score);
        }
      } catch (const std::exception& e) {
        ++report.failures;
        summary << in.string() << ": " << e.what() << "\n";
      }
      continue;
    }
    VideoStats vs;
    vs.video_id = curation::video_id_for(in);
    try {
      vs.frames = curation::probe_frames(in);
      vs.report = curation::frame_size_report(vs.frames);
    } catch (const InsufficientData& e) {
      vs.notice = std::string("insufficient data: ") + e.what();
    } catch (const std::exception& e) {
      ++report.failures;
      vs.notice = std::string("failed: ") + e.what();
    }
    report.videos.push_back(std::move(vs));
  }

  std::vector<CsvRow> frames{{"video_id", "frame_index", "picture_type", "byte_size"}};
  std::vector<CsvRow> per_video{{"video_id", "frames", "mean_i", "mean_non_i", "ratio", "notice"}};
  std::vector<double> i_sizes, other_sizes;
  for (const auto& v : report.videos) {
    for (const auto& f : v.frames) {
      frames.push_back({v.video_id, std::to_string(f.frame_index), std::string(curation::to_string(f.picture_type)),
                        std::to_string(f.byte_size)});
      (f.picture_type == curation::PictureType::I ? i_sizes : other_sizes).push_back(static_cast<double>(f.byte_size));
    }
    if (v.report) {
      per_video.push_back({v.video_id, std::to_string(v.frames.size()), num(v.report->mean_i),
                           num(v.report->mean_non_i), num(v.report->ratio), ""});
      summary << v.video_id << ": " << v.frames.size() << " frames, mean I " << num(v.report->mean_i)
              << " B, mean non-I " << num(v.report->mean_non_i) << " B, ratio " << num(v.report->ratio) << "\n";
    } else {
      per_video.push_back({v.video_id, std::to_string(v.frames.size()), "", "", "", v.notice});
      summary << v.video_id << ": " << v.notice << "\n";
    }
  }

  std::vector<CsvRow> size_hist{{"class", "bin_lo", "bin_hi", "count"}};
  if (!i_sizes.empty() || !other_sizes.empty()) {
    double lo = 1e300, hi = 0.0;
    for (const auto* set : {&i_sizes, &other_sizes}) {
      for (double v : *set) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    append_histogram(size_hist, "I", histogram(i_sizes, lo, hi, cfg.histogram_bins));
    append_histogram(size_hist, "non-I", histogram(other_sizes, lo, hi, cfg.histogram_bins));
  }

  report.score_histogram = histogram(report.scores, 0.0, 1.0, cfg.histogram_bins);
  std::vector<CsvRow> score_hist{{"bin_lo", "bin_hi", "count"}};
  for (const auto& b : report.score_histogram) score_hist.push_back({num(b.lo), num(b.hi), std::to_string(b.count)});
  if (!report.scores.empty()) {
    double sum = 0.0;
    for (double s : report.scores) sum += s;
    summary << "complexity scores: " << report.scores.size() << ", mean " << num(sum / report.scores.size()) << "\n";
  }

  if (report.videos.empty() && report.scores.empty()) summary << "no frames or complexity scores found\n";

  write_csv(cfg.out_dir / "frame_sizes.csv", frames);
  write_csv(cfg.out_dir / "frame_size_summary.csv", per_video);
  write_csv(cfg.out_dir / "frame_size_histogram.csv", size_hist);
  write_csv(cfg.out_dir / "score_histogram.csv", score_hist);
  report.summary = summary.str();
  std::ofstream(cfg.out_dir / "summary.txt") << report.summary;
  return report;
}

}  // namespace datakit::cli

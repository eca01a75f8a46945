#include "datakit/curation/complexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit::curation {

namespace {

cv::Mat gray_u8(const RasterImage& img) {
  const auto g = luma(img);
  cv::Mat out(img.height(), img.width(), CV_8UC1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.at<std::uint8_t>(y, x) = to_u8(g.at(x, y));
  }
  return out;
}

}  // namespace

void ScorerConfig::validate() const {
  if ((kind == ScorerKind::external_file) != external_path.has_value()) {
    throw ConfigError("scorer: an external path is required for, and only for, the external-file scorer");
  }
}

double edge_density(const RasterImage& img) {
  cv::Mat g;
  gray_u8(img).convertTo(g, CV_32F, 1.0 / 255.0);
  cv::Mat gx, gy;
  cv::Sobel(g, gx, CV_32F, 1, 0, 3, 0.25, 0, cv::BORDER_REPLICATE);
  cv::Sobel(g, gy, CV_32F, 0, 1, 3, 0.25, 0, cv::BORDER_REPLICATE);
  cv::Mat mag;
  cv::magnitude(gx, gy, mag);
  const auto edges = cv::countNonZero(mag > kEdgeThreshold);
  return static_cast<double>(edges) / static_cast<double>(mag.total());
}

double gray_entropy(const RasterImage& img) {
  const cv::Mat g = gray_u8(img);
  std::array<std::size_t, 256> hist{};
  for (auto it = g.begin<std::uint8_t>(); it != g.end<std::uint8_t>(); ++it) ++hist[*it];
  const double n = static_cast<double>(g.total());
  double h = 0.0;
  for (auto c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double builtin_proxy(const RasterImage& img) {
  const double d = std::min(1.0, edge_density(img) / kEdgeDensityCap);
  const double e = std::min(1.0, gray_entropy(img) / kEntropyCap);
  return std::clamp(0.5 * d + 0.5 * e, 0.0, 1.0);
}

ScoreTable ScoreTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read score file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

ScoreTable ScoreTable::parse(const std::string& text) {
  ScoreTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ConfigError("score file line " + std::to_string(line_no) + ": expected <path>\\t<score>");
    }
    const std::string value = line.substr(tab + 1);
    double score = 0.0;
    std::size_t used = 0;
    try {
      score = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !(score >= 0.0 && score <= 1.0)) {
      throw ConfigError("score file line " + std::to_string(line_no) + ": score must be a number in [0,1]");
    }
    t.scores_[line.substr(0, tab)] = score;
  }
  return t;
}

double ScoreTable::lookup(const std::string& relative_path) const {
  const auto it = scores_.find(relative_path);
  if (it == scores_.end()) throw ConfigError("no external score for " + relative_path);
  return it->second;
}

ComplexityScorer::ComplexityScorer(const ScorerConfig& cfg) {
  cfg.validate();
  if (cfg.kind == ScorerKind::external_file) {
    id_ = kExternalScorerId;
    table_ = ScoreTable::load(*cfg.external_path);
  } else {
    id_ = kBuiltinScorerId;
  }
}

ComplexityScore ComplexityScorer::score(const RasterImage& img, const std::string& key) const {
  if (table_) return {table_->lookup(key), id_};
  return {builtin_proxy(img), id_};
}

ComplexityScore score_complexity(const RasterImage& img, const ScorerConfig& cfg, const std::string& key) {
  return ComplexityScorer(cfg).score(img, key);
}

}  // namespace datakit::curation

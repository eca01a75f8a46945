#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

#include "datakit/core/image.hpp"

namespace datakit::curation {

inline constexpr const char* kBuiltinScorerId = "builtin-proxy";
inline constexpr const char* kExternalScorerId = "external";

/// Gradient-density cap and entropy cap (bits) of the builtin proxy.
inline constexpr double kEdgeDensityCap = 0.35;
inline constexpr double kEntropyCap = 8.0;
/// Sobel magnitude on [0, 1] gray above which a pixel counts as an edge.
inline constexpr double kEdgeThreshold = 0.1;

struct ComplexityScore {
  double value = 0.0;
  std::string scorer_id;

  friend bool operator==(const ComplexityScore&, const ComplexityScore&) = default;
};

enum class ScorerKind { builtin_proxy, external_file };

struct ScorerConfig {
  ScorerKind kind = ScorerKind::builtin_proxy;
  std::optional<std::filesystem::path> external_path;

  static ScorerConfig builtin() { return {}; }
  static ScorerConfig external(std::filesystem::path p) { return {ScorerKind::external_file, std::move(p)}; }

  /// Throws ConfigError unless external_path is set exactly for external_file.
  void validate() const;
};

/// Fraction of pixels whose Sobel gradient magnitude exceeds kEdgeThreshold.
double edge_density(const RasterImage& img);
/// Shannon entropy in bits of the 8-bit luma histogram.
double gray_entropy(const RasterImage& img);
/// 0.5 * min(1, density / cap) + 0.5 * min(1, entropy / 8).
double builtin_proxy(const RasterImage& img);

/// Scores read from "<relative-path>\t<score>" lines.
class ScoreTable {
 public:
  /// Throws IoError if unreadable and ConfigError on a malformed line.
  static ScoreTable load(const std::filesystem::path& path);
  static ScoreTable parse(const std::string& text);

  /// Throws ConfigError when the key is absent.
  double lookup(const std::string& relative_path) const;
  std::size_t size() const noexcept { return scores_.size(); }

 private:
  std::unordered_map<std::string, double> scores_;
};

class ComplexityScorer {
 public:
  explicit ComplexityScorer(const ScorerConfig& cfg);

  /// `key` is the image's relative path; only the external scorer uses it.
  ComplexityScore score(const RasterImage& img, const std::string& key = {}) const;
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
  std::optional<ScoreTable> table_;
};

ComplexityScore score_complexity(const RasterImage& img, const ScorerConfig& cfg, const std::string& key = {});

}  // namespace datakit::curation

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "datakit/codec/compression_spec.hpp"

namespace datakit::degrade {

/// Kernel families the sampler draws from. Sinc is drawn separately with
/// its own probability; identity is never sampled.
enum class KernelKind { iso, aniso, generalized_iso, generalized_aniso, plateau_iso, plateau_aniso, sinc, identity };
inline constexpr std::array kSampledKernelKinds = {KernelKind::iso,          KernelKind::aniso,
                                                   KernelKind::generalized_iso, KernelKind::generalized_aniso,
                                                   KernelKind::plateau_iso,  KernelKind::plateau_aniso};

enum class Interp { area, bilinear, bicubic };
inline constexpr std::array kAllInterps = {Interp::area, Interp::bilinear, Interp::bicubic};

enum class ResizeMode { up, down, keep };

std::string_view to_string(KernelKind k) noexcept;
std::string_view to_string(Interp i) noexcept;
std::string_view to_string(ResizeMode m) noexcept;
KernelKind kernel_kind_from_string(std::string_view s);
Interp interp_from_string(std::string_view s);
ResizeMode resize_mode_from_string(std::string_view s);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Range&, const Range&) = default;
};

struct BlurConfig {
  std::vector<int> kernel_sizes;
  /// Indexed like kSampledKernelKinds.
  std::array<double, 6> kind_probs{};
  Range sigma;
  Range betag;
  Range betap;
  double sinc_prob = 0.0;
  friend bool operator==(const BlurConfig&, const BlurConfig&) = default;
};

struct NoiseConfig {
  double gaussian_prob = 0.5;
  /// Gaussian sigma in 8-bit levels.
  Range gaussian_sigma;
  Range poisson_scale;
  double gray_prob = 0.4;
  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

struct ResizeConfig {
  double up_prob = 0.2;
  double down_prob = 0.7;
  double keep_prob = 0.1;
  Range range;
  /// Drawn uniformly.
  std::vector<Interp> interps;
  friend bool operator==(const ResizeConfig&, const ResizeConfig&) = default;
};

struct CompressionConfig {
  /// Indexed like codec::kAllCodecs.
  std::array<double, 7> codec_probs{};
  std::array<codec::IntRange, 7> quality{};
  codec::IntRange speed{0, 6};
  /// Indexed like codec::kAllPresets.
  std::array<double, 5> preset_probs{};
  friend bool operator==(const CompressionConfig& a, const CompressionConfig& b);
};

struct StageConfig {
  BlurConfig blur;
  NoiseConfig noise;
  ResizeConfig resize;
  CompressionConfig compression;
  friend bool operator==(const StageConfig&, const StageConfig&) = default;
};

/// Every range and probability of the two-stage degradation model.
struct DegradationConfig {
  std::array<StageConfig, 2> stages;

  /// Shipped defaults.
  static DegradationConfig defaults();
  /// Reads YAML; keys that are absent keep their default. Validates.
  static DegradationConfig load(const std::filesystem::path& path);
  static DegradationConfig parse(const std::string& yaml_text);

  /// Throws ConfigError on a probability set not summing to 1 within 1e-9,
  /// an empty or inverted range, or a range outside what the codecs accept.
  void validate() const;

  nlohmann::json to_json() const;
  std::string to_yaml() const;

  friend bool operator==(const DegradationConfig&, const DegradationConfig&) = default;
};

inline constexpr double kProbabilityTolerance = 1e-9;

}  // namespace datakit::degrade

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "datakit/codec/compression_spec.hpp"
#include "datakit/core/random.hpp"
#include "datakit/degrade/config.hpp"
#include "datakit/degrade/kernels.hpp"

namespace datakit::degrade {

enum class NoiseFamily { gaussian, poisson };

std::string_view to_string(NoiseFamily f) noexcept;

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::gaussian;
  /// Gaussian sigma on the [0, 1] scale, or the Poisson scale.
  double strength = 0.0;
  bool gray = false;
  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct ResizeStep {
  double factor = 1.0;
  Interp interp = Interp::bicubic;
  /// 0 before blur, 1 before noise, 2 before compression, 3 after compression.
  int position_slot = 0;
  ResizeMode mode = ResizeMode::keep;
  friend bool operator==(const ResizeStep&, const ResizeStep&) = default;
};

struct BlurOp {
  int stage = 1;
  KernelParams kernel;
  friend bool operator==(const BlurOp&, const BlurOp&) = default;
};

struct NoiseOp {
  int stage = 1;
  NoiseSpec noise;
  /// Seeds the noise realization.
  SeedSpec seed;
  friend bool operator==(const NoiseOp&, const NoiseOp&) = default;
};

struct ResizeOp {
  int stage = 1;
  ResizeStep resize;
  friend bool operator==(const ResizeOp&, const ResizeOp&) = default;
};

struct CompressionOp {
  int stage = 1;
  codec::CompressionSpec spec;
  friend bool operator==(const CompressionOp&, const CompressionOp&) = default;
};

/// Bicubic resize to the exact LR size; always the last step.
struct FinalResizeOp {
  int width = 1;
  int height = 1;
  friend bool operator==(const FinalResizeOp&, const FinalResizeOp&) = default;
};

using PlanStep = std::variant<BlurOp, NoiseOp, ResizeOp, CompressionOp, FinalResizeOp>;

std::string_view step_name(const PlanStep& s) noexcept;

struct DegradationPlan {
  SeedSpec seed;
  int hr_width = 1;
  int hr_height = 1;
  int scale = 1;
  std::vector<PlanStep> steps;

  int final_width() const noexcept { return hr_width / scale; }
  int final_height() const noexcept { return hr_height / scale; }

  friend bool operator==(const DegradationPlan&, const DegradationPlan&) = default;
};

/// Number of stages in the pipeline.
inline constexpr int kStages = 2;
/// Slots a stage's stochastic resize can occupy.
inline constexpr int kResizeSlots = 4;

/// Draws every step parameter from `cfg` using streams derived from `seed`.
/// Throws DimensionError unless scale >= 1 and both HR dimensions are
/// positive multiples of scale.
DegradationPlan sample_plan(int hr_width, int hr_height, int scale, const DegradationConfig& cfg, const SeedSpec& seed);

/// Canonical JSON text: sorted keys, no whitespace.
std::string serialize(const DegradationPlan& plan);
/// Throws ConfigError on anything serialize() could not have produced.
DegradationPlan parse_plan(const std::string& text);
nlohmann::json plan_to_json(const DegradationPlan& plan);
DegradationPlan plan_from_json(const nlohmann::json& j);

/// SHA-256 hex of the canonical serialization.
std::string plan_digest(const DegradationPlan& plan);

/// Throws ConfigError unless the plan has the two-stage shape: two blurs,
/// two noises, two compressions, two stochastic resizes and a final resize
/// last.
void check_plan_shape(const DegradationPlan& plan);

}  // namespace datakit::degrade

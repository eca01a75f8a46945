#include "datakit/degrade/execute.hpp"

#include <algorithm>
#include <cmath>

#include "datakit/codec/codec_bridge.hpp"
#include "datakit/core/error.hpp"
#include "datakit/degrade/ops.hpp"

namespace datakit::degrade {

namespace {

int scaled(int dim, double factor) { return std::max(1, static_cast<int>(std::lround(dim * factor))); }

FloatImage run_step(const FloatImage& img, const PlanStep& step, const CompressionExecutor& compress) {
  return std::visit(
      [&](const auto& s) -> FloatImage {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BlurOp>) {
          return apply_blur(img, make_kernel(s.kernel));
        } else if constexpr (std::is_same_v<T, NoiseOp>) {
          auto stream = derive_stream(s.seed);
          return add_noise(img, s.noise, stream);
        } else if constexpr (std::is_same_v<T, ResizeOp>) {
          return resize_to(img, scaled(img.width(), s.resize.factor), scaled(img.height(), s.resize.factor),
                           s.resize.interp);
        } else if constexpr (std::is_same_v<T, CompressionOp>) {
          const auto in = denormalize(img);
          const auto out = compress(in, s.spec);
          if (!out.same_shape(in)) throw CodecError("compression changed the image size");
          return normalize(out);
        } else {
          return resize_to(img, s.width, s.height, Interp::bicubic);
        }
      },
      step);
}

}  // namespace

CompressionExecutor default_compression_executor() {
  return [](const RasterImage& img, const codec::CompressionSpec& spec) { return codec::roundtrip(img, spec); };
}

RasterImage execute_plan(const RasterImage& hr, const DegradationPlan& plan, const CompressionExecutor& compress) {
  if (hr.width() != plan.hr_width || hr.height() != plan.hr_height) {
    throw DimensionError("plan was sampled for " + std::to_string(plan.hr_width) + "x" +
                         std::to_string(plan.hr_height) + " but the image is " + std::to_string(hr.width()) + "x" +
                         std::to_string(hr.height()));
  }
  check_plan_shape(plan);
  FloatImage img = normalize(hr);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    try {
      img = run_step(img, plan.steps[i], compress);
    } catch (const std::exception& e) {
      throw StepError(i, std::string(step_name(plan.steps[i])) + ": " + e.what());
    }
  }
  return denormalize(img);
}

}  // namespace datakit::degrade

#pragma once

#include <functional>

#include "datakit/codec/compression_spec.hpp"
#include "datakit/core/image.hpp"
#include "datakit/degrade/plan.hpp"

namespace datakit::degrade {

using CompressionExecutor = std::function<RasterImage(const RasterImage&, const codec::CompressionSpec&)>;

/// The in-process codec bridge.
CompressionExecutor default_compression_executor();

/// Runs every step in order. Intermediate images stay in floating point
/// except across compression, which works on 8-bit pixels. Any failure is
/// rethrown as StepError carrying the step index.
RasterImage execute_plan(const RasterImage& hr, const DegradationPlan& plan,
                         const CompressionExecutor& compress = default_compression_executor());

}  // namespace datakit::degrade

#include "datakit/degrade/plan.hpp"

#include <numbers>

#include "datakit/core/digest.hpp"
#include "datakit/core/error.hpp"

namespace datakit::degrade {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr const char* kFormat = "datakit-plan/1";

/// Index drawn from a probability vector; zero-probability entries are
/// never returned.
template <std::size_t N>
std::size_t categorical(RandomStream& rng, const std::array<double, N>& probs) {
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (probs[i] <= 0.0) continue;
    cum += probs[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

double sample_beta(RandomStream& rng, const Range& r) {
  return rng.uniform() < 0.5 ? rng.uniform(r.lo, 1.0) : rng.uniform(1.0, r.hi);
}

KernelParams sample_kernel(RandomStream& rng, const BlurConfig& cfg) {
  KernelParams k;
  k.size = cfg.kernel_sizes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(cfg.kernel_sizes.size()) - 1))];
  if (rng.uniform() < cfg.sinc_prob) {
    k.kind = KernelKind::sinc;
    k.omega_c = k.size < 13 ? rng.uniform(kPi / 3.0, kPi) : rng.uniform(kPi / 5.0, kPi);
    return k;
  }
  k.kind = kSampledKernelKinds[categorical(rng, cfg.kind_probs)];
  const bool iso = k.kind == KernelKind::iso || k.kind == KernelKind::generalized_iso ||
                   k.kind == KernelKind::plateau_iso;
  k.sigma_x = rng.uniform(cfg.sigma.lo, cfg.sigma.hi);
  if (iso) {
    k.sigma_y = k.sigma_x;
  } else {
    k.sigma_y = rng.uniform(cfg.sigma.lo, cfg.sigma.hi);
    k.theta = rng.uniform(-kPi, kPi);
  }
  if (k.kind == KernelKind::generalized_iso || k.kind == KernelKind::generalized_aniso) {
    k.beta = sample_beta(rng, cfg.betag);
  } else if (k.kind == KernelKind::plateau_iso || k.kind == KernelKind::plateau_aniso) {
    k.beta = sample_beta(rng, cfg.betap);
  }
  return k;
}

NoiseSpec sample_noise(RandomStream& rng, const NoiseConfig& cfg) {
  NoiseSpec n;
  if (rng.uniform() < cfg.gaussian_prob) {
    n.family = NoiseFamily::gaussian;
    n.strength = rng.uniform(cfg.gaussian_sigma.lo, cfg.gaussian_sigma.hi) / 255.0;
  } else {
    n.family = NoiseFamily::poisson;
    n.strength = rng.uniform(cfg.poisson_scale.lo, cfg.poisson_scale.hi);
  }
  n.gray = rng.uniform() < cfg.gray_prob;
  return n;
}

ResizeStep sample_resize(RandomStream& rng, const ResizeConfig& cfg) {
  ResizeStep r;
  const std::array<double, 3> modes{cfg.up_prob, cfg.down_prob, cfg.keep_prob};
  r.mode = std::array{ResizeMode::up, ResizeMode::down, ResizeMode::keep}[categorical(rng, modes)];
  switch (r.mode) {
    case ResizeMode::up: r.factor = cfg.range.hi - rng.uniform() * (cfg.range.hi - 1.0); break;
    case ResizeMode::down: r.factor = rng.uniform(cfg.range.lo, 1.0); break;
    case ResizeMode::keep: r.factor = 1.0; break;
  }
  r.interp = cfg.interps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(cfg.interps.size()) - 1))];
  r.position_slot = static_cast<int>(rng.uniform_int(0, kResizeSlots - 1));
  return r;
}

codec::CompressionSpec sample_compression(RandomStream& rng, const CompressionConfig& cfg) {
  codec::CompressionSpec c;
  const auto idx = categorical(rng, cfg.codec_probs);
  c.codec = codec::kAllCodecs[idx];
  c.quality = static_cast<int>(rng.uniform_int(cfg.quality[idx].lo, cfg.quality[idx].hi));
  if (c.codec == codec::Codec::webp || c.codec == codec::Codec::avif) {
    c.speed = static_cast<int>(rng.uniform_int(cfg.speed.lo, cfg.speed.hi));
  }
  if (codec::is_video_codec(c.codec)) c.preset = codec::kAllPresets[categorical(rng, cfg.preset_probs)];
  return c;
}

json step_to_json(const PlanStep& step) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BlurOp>) {
          return {{"op", "blur"}, {"stage", s.stage}, {"kernel", s.kernel}};
        } else if constexpr (std::is_same_v<T, NoiseOp>) {
          return {{"op", "noise"},         {"stage", s.stage},       {"family", to_string(s.noise.family)},
                  {"strength", s.noise.strength}, {"gray", s.noise.gray}, {"seed", s.seed}};
        } else if constexpr (std::is_same_v<T, ResizeOp>) {
          return {{"op", "resize"},
                  {"stage", s.stage},
                  {"factor", s.resize.factor},
                  {"interp", to_string(s.resize.interp)},
                  {"slot", s.resize.position_slot},
                  {"mode", to_string(s.resize.mode)}};
        } else if constexpr (std::is_same_v<T, CompressionOp>) {
          return {{"op", "compression"}, {"stage", s.stage}, {"spec", s.spec}};
        } else {
          return {{"op", "final_resize"}, {"width", s.width}, {"height", s.height}, {"interp", "bicubic"}};
        }
      },
      step);
}

NoiseFamily noise_family_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseFamily::gaussian;
  if (s == "poisson") return NoiseFamily::poisson;
  throw ConfigError("unknown noise family '" + s + "'");
}

PlanStep step_from_json(const json& j) {
  const auto op = j.at("op").get<std::string>();
  if (op == "blur") return BlurOp{j.at("stage").get<int>(), j.at("kernel").get<KernelParams>()};
  if (op == "noise") {
    NoiseOp n;
    n.stage = j.at("stage").get<int>();
    n.noise.family = noise_family_from_string(j.at("family").get<std::string>());
    n.noise.strength = j.at("strength").get<double>();
    n.noise.gray = j.at("gray").get<bool>();
    n.seed = j.at("seed").get<SeedSpec>();
    return n;
  }
  if (op == "resize") {
    ResizeOp r;
    r.stage = j.at("stage").get<int>();
    r.resize.factor = j.at("factor").get<double>();
    r.resize.interp = interp_from_string(j.at("interp").get<std::string>());
    r.resize.position_slot = j.at("slot").get<int>();
    r.resize.mode = resize_mode_from_string(j.at("mode").get<std::string>());
    return r;
  }
  if (op == "compression") return CompressionOp{j.at("stage").get<int>(), j.at("spec").get<codec::CompressionSpec>()};
  if (op == "final_resize") {
    if (j.at("interp").get<std::string>() != "bicubic") throw ConfigError("final resize must be bicubic");
    return FinalResizeOp{j.at("width").get<int>(), j.at("height").get<int>()};
  }
  throw ConfigError("unknown plan step '" + op + "'");
}

}  // namespace

std::string_view to_string(NoiseFamily f) noexcept { return f == NoiseFamily::gaussian ? "gaussian" : "poisson"; }

std::string_view step_name(const PlanStep& s) noexcept {
  static constexpr std::array<std::string_view, 5> kNames = {"blur", "noise", "resize", "compression", "final_resize"};
  return kNames[s.index()];
}

DegradationPlan sample_plan(int hr_width, int hr_height, int scale, const DegradationConfig& cfg,
                            const SeedSpec& seed) {
  if (scale < 1) throw DimensionError("scale must be at least 1");
  if (hr_width < scale || hr_height < scale || hr_width % scale != 0 || hr_height % scale != 0) {
    throw DimensionError("HR size " + std::to_string(hr_width) + "x" + std::to_string(hr_height) +
                         " is not a positive multiple of scale " + std::to_string(scale));
  }
  cfg.validate();
  DegradationPlan plan;
  plan.seed = seed;
  plan.hr_width = hr_width;
  plan.hr_height = hr_height;
  plan.scale = scale;

  auto rng = derive_stream(seed);
  for (int stage = 1; stage <= kStages; ++stage) {
    const auto& sc = cfg.stages[static_cast<std::size_t>(stage - 1)];
    const BlurOp blur{stage, sample_kernel(rng, sc.blur)};
    const NoiseOp noise{stage, sample_noise(rng, sc.noise), seed.with_label(seed.stage_label + ".noise" + std::to_string(stage))};
    const ResizeOp resize{stage, sample_resize(rng, sc.resize)};
    const CompressionOp comp{stage, sample_compression(rng, sc.compression)};

    std::vector<PlanStep> ops = {blur, noise, comp};
    ops.insert(ops.begin() + resize.resize.position_slot, resize);
    plan.steps.insert(plan.steps.end(), ops.begin(), ops.end());
  }
  plan.steps.push_back(FinalResizeOp{plan.final_width(), plan.final_height()});
  return plan;
}

json plan_to_json(const DegradationPlan& plan) {
  json steps = json::array();
  for (const auto& s : plan.steps) steps.push_back(step_to_json(s));
  return {{"format", kFormat},
          {"seed", plan.seed},
          {"hr_size", {plan.hr_width, plan.hr_height}},
          {"scale", plan.scale},
          {"final_lr_size", {plan.final_width(), plan.final_height()}},
          {"steps", steps}};
}

DegradationPlan plan_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ConfigError("unsupported plan format");
    DegradationPlan plan;
    plan.seed = j.at("seed").get<SeedSpec>();
    plan.hr_width = j.at("hr_size").at(0).get<int>();
    plan.hr_height = j.at("hr_size").at(1).get<int>();
    plan.scale = j.at("scale").get<int>();
    if (plan.scale < 1 || plan.hr_width < 1 || plan.hr_height < 1) throw ConfigError("plan sizes must be positive");
    if (j.at("final_lr_size").at(0).get<int>() != plan.final_width() ||
        j.at("final_lr_size").at(1).get<int>() != plan.final_height()) {
      throw ConfigError("plan final_lr_size does not equal hr_size / scale");
    }
    for (const auto& s : j.at("steps")) plan.steps.push_back(step_from_json(s));
    check_plan_shape(plan);
    return plan;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed plan: ") + e.what());
  }
}

std::string serialize(const DegradationPlan& plan) { return plan_to_json(plan).dump(); }

DegradationPlan parse_plan(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("plan is not valid JSON: ") + e.what());
  }
  return plan_from_json(j);
}

std::string plan_digest(const DegradationPlan& plan) { return sha256_hex(serialize(plan)); }

void check_plan_shape(const DegradationPlan& plan) {
  std::array<int, 5> counts{};
  for (const auto& s : plan.steps) ++counts[s.index()];
  if (counts != std::array<int, 5>{2, 2, 2, 2, 1}) {
    throw ConfigError("plan must hold two blur, noise, resize and compression steps and one final resize");
  }
  const auto* last = std::get_if<FinalResizeOp>(&plan.steps.back());
  if (!last) throw ConfigError("the final resize must be the last plan step");
  if (last->width != plan.final_width() || last->height != plan.final_height()) {
    throw ConfigError("final resize size does not equal hr size / scale");
  }
}

}  // namespace datakit::degrade

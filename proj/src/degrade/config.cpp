#include "datakit/degrade/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <fstream>
#include <numeric>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "datakit/core/error.hpp"

namespace datakit::degrade {

namespace {

using codec::Codec;
using codec::IntRange;
using codec::Preset;

template <typename E, std::size_t N>
E enum_from_string(std::string_view s, const std::array<E, N>& all, const char* what) {
  for (auto e : all) {
    if (to_string(e) == s) return e;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

StageConfig default_stage(int stage) {
  StageConfig s;
  s.blur.kernel_sizes = {7, 9, 11, 13, 15, 17, 19, 21};
  s.blur.kind_probs = {0.45, 0.25, 0.12, 0.03, 0.12, 0.03};
  s.blur.sigma = stage == 1 ? Range{0.2, 3.0} : Range{0.2, 1.5};
  s.blur.betag = {0.5, 4.0};
  s.blur.betap = {1.0, 2.0};
  s.blur.sinc_prob = 0.1;

  s.noise.gaussian_prob = 0.5;
  s.noise.gaussian_sigma = stage == 1 ? Range{1.0, 30.0} : Range{1.0, 25.0};
  s.noise.poisson_scale = stage == 1 ? Range{0.05, 3.0} : Range{0.05, 2.5};
  s.noise.gray_prob = 0.4;

  s.resize.up_prob = 0.2;
  s.resize.down_prob = 0.7;
  s.resize.keep_prob = 0.1;
  s.resize.range = stage == 1 ? Range{0.1, 1.2} : Range{0.15, 1.2};
  s.resize.interps = {Interp::area, Interp::bilinear, Interp::bicubic};

  auto& c = s.compression;
  if (stage == 1) {
    c.codec_probs = {0.4, 0.6, 0, 0, 0, 0, 0};
  } else {
    c.codec_probs = {0.06, 0.10, 0.10, 0.12, 0.12, 0.30, 0.20};
  }
  for (std::size_t i = 0; i < codec::kAllCodecs.size(); ++i) c.quality[i] = codec::quality_range(codec::kAllCodecs[i]);
  c.speed = codec::kSpeedRange;
  c.preset_probs = {0.05, 0.35, 0.30, 0.20, 0.10};
  return s;
}

void check_probs(const double* p, std::size_t n, const std::string& what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) throw ConfigError(what + ": probabilities must lie in [0, 1]");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": probabilities sum to " << sum << ", expected 1";
    throw ConfigError(msg.str());
  }
}

void check_range(const Range& r, double lo, double hi, const std::string& what) {
  if (!(r.lo <= r.hi) || !(r.lo >= lo) || !(r.hi <= hi)) {
    std::ostringstream msg;
    msg << what << ": range [" << r.lo << ", " << r.hi << "] must be ordered and inside [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

void check_int_range(const IntRange& r, const IntRange& allowed, const std::string& what) {
  if (r.lo > r.hi || r.lo < allowed.lo || r.hi > allowed.hi) {
    throw ConfigError(what + ": range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "] must be inside [" +
                      std::to_string(allowed.lo) + ", " + std::to_string(allowed.hi) + "]");
  }
}

// YAML reading helpers. Each overwrites its target only when the key exists.

std::string where(const std::string& path, const char* key) { return path + "." + key; }

void allow_keys(const YAML::Node& n, std::initializer_list<std::string_view> keys, const std::string& path) {
  if (!n.IsMap()) throw ConfigError(path + ": expected a map");
  for (const auto& kv : n) {
    const auto k = kv.first.as<std::string>();
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError(path + ": unknown key '" + k + "'");
  }
}

Range read_range(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 2) throw ConfigError(path + ": expected [lo, hi]");
  return {n[0].as<double>(), n[1].as<double>()};
}

IntRange read_int_range(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 2) throw ConfigError(path + ": expected [lo, hi]");
  return {n[0].as<int>(), n[1].as<int>()};
}

template <typename E, std::size_t N>
void read_probs(const YAML::Node& n, const std::string& path, const std::array<E, N>& all, std::array<double, N>& out) {
  if (!n.IsMap()) throw ConfigError(path + ": expected a map of name: probability");
  out.fill(0.0);
  for (const auto& kv : n) {
    const auto e = enum_from_string(kv.first.as<std::string>(), all, path.c_str());
    const auto idx = static_cast<std::size_t>(std::find(all.begin(), all.end(), e) - all.begin());
    out[idx] = kv.second.as<double>();
  }
}

void read_blur(const YAML::Node& n, const std::string& path, BlurConfig& b) {
  if (!n) return;
  allow_keys(n, {"kernel_sizes", "kernel_types", "sigma", "betag", "betap", "sinc_prob"}, path);
  if (auto v = n["kernel_sizes"]) b.kernel_sizes = v.as<std::vector<int>>();
  if (auto v = n["kernel_types"]) read_probs(v, where(path, "kernel_types"), kSampledKernelKinds, b.kind_probs);
  if (auto v = n["sigma"]) b.sigma = read_range(v, where(path, "sigma"));
  if (auto v = n["betag"]) b.betag = read_range(v, where(path, "betag"));
  if (auto v = n["betap"]) b.betap = read_range(v, where(path, "betap"));
  if (auto v = n["sinc_prob"]) b.sinc_prob = v.as<double>();
}

void read_noise(const YAML::Node& n, const std::string& path, NoiseConfig& c) {
  if (!n) return;
  allow_keys(n, {"gaussian_prob", "gaussian_sigma", "poisson_scale", "gray_prob"}, path);
  if (auto v = n["gaussian_prob"]) c.gaussian_prob = v.as<double>();
  if (auto v = n["gaussian_sigma"]) c.gaussian_sigma = read_range(v, where(path, "gaussian_sigma"));
  if (auto v = n["poisson_scale"]) c.poisson_scale = read_range(v, where(path, "poisson_scale"));
  if (auto v = n["gray_prob"]) c.gray_prob = v.as<double>();
}

void read_resize(const YAML::Node& n, const std::string& path, ResizeConfig& r) {
  if (!n) return;
  allow_keys(n, {"modes", "range", "interpolations"}, path);
  if (auto m = n["modes"]) {
    if (!m.IsMap()) throw ConfigError(where(path, "modes") + ": expected {up, down, keep}");
    r.up_prob = r.down_prob = r.keep_prob = 0.0;
    for (const auto& kv : m) {
      const auto mode = resize_mode_from_string(kv.first.as<std::string>());
      const double p = kv.second.as<double>();
      (mode == ResizeMode::up ? r.up_prob : mode == ResizeMode::down ? r.down_prob : r.keep_prob) = p;
    }
  }
  if (auto v = n["range"]) r.range = read_range(v, where(path, "range"));
  if (auto v = n["interpolations"]) {
    r.interps.clear();
    for (const auto& i : v) r.interps.push_back(interp_from_string(i.as<std::string>()));
  }
}

void read_compression(const YAML::Node& n, const std::string& path, CompressionConfig& c) {
  if (!n) return;
  allow_keys(n, {"codecs", "quality", "speed", "presets"}, path);
  if (auto v = n["codecs"]) read_probs(v, where(path, "codecs"), codec::kAllCodecs, c.codec_probs);
  if (auto q = n["quality"]) {
    if (!q.IsMap()) throw ConfigError(where(path, "quality") + ": expected a map of codec: [lo, hi]");
    for (const auto& kv : q) {
      const auto codec = codec::codec_from_string(kv.first.as<std::string>());
      const auto idx = static_cast<std::size_t>(codec);
      c.quality[idx] = read_int_range(kv.second, where(path, "quality") + "." + std::string(to_string(codec)));
    }
  }
  if (auto v = n["speed"]) c.speed = read_int_range(v, where(path, "speed"));
  if (auto v = n["presets"]) read_probs(v, where(path, "presets"), codec::kAllPresets, c.preset_probs);
}

template <std::size_t N, typename E>
YAML::Node probs_node(const std::array<double, N>& probs, const std::array<E, N>& all) {
  YAML::Node n(YAML::NodeType::Map);
  for (std::size_t i = 0; i < N; ++i) {
    if (probs[i] > 0.0) n[std::string(to_string(all[i]))] = probs[i];
  }
  return n;
}

YAML::Node range_node(double lo, double hi) {
  YAML::Node n(YAML::NodeType::Sequence);
  n.push_back(lo);
  n.push_back(hi);
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

}  // namespace

std::string_view to_string(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::iso: return "iso";
    case KernelKind::aniso: return "aniso";
    case KernelKind::generalized_iso: return "generalized_iso";
    case KernelKind::generalized_aniso: return "generalized_aniso";
    case KernelKind::plateau_iso: return "plateau_iso";
    case KernelKind::plateau_aniso: return "plateau_aniso";
    case KernelKind::sinc: return "sinc";
    case KernelKind::identity: return "identity";
  }
  return "?";
}

std::string_view to_string(Interp i) noexcept {
  switch (i) {
    case Interp::area: return "area";
    case Interp::bilinear: return "bilinear";
    case Interp::bicubic: return "bicubic";
  }
  return "?";
}

std::string_view to_string(ResizeMode m) noexcept {
  switch (m) {
    case ResizeMode::up: return "up";
    case ResizeMode::down: return "down";
    case ResizeMode::keep: return "keep";
  }
  return "?";
}

KernelKind kernel_kind_from_string(std::string_view s) {
  constexpr std::array all = {KernelKind::iso,          KernelKind::aniso,         KernelKind::generalized_iso,
                              KernelKind::generalized_aniso, KernelKind::plateau_iso, KernelKind::plateau_aniso,
                              KernelKind::sinc,         KernelKind::identity};
  return enum_from_string(s, all, "kernel type");
}

Interp interp_from_string(std::string_view s) { return enum_from_string(s, kAllInterps, "interpolation"); }

ResizeMode resize_mode_from_string(std::string_view s) {
  constexpr std::array all = {ResizeMode::up, ResizeMode::down, ResizeMode::keep};
  return enum_from_string(s, all, "resize mode");
}

bool operator==(const CompressionConfig& a, const CompressionConfig& b) {
  for (std::size_t i = 0; i < a.quality.size(); ++i) {
    if (a.quality[i].lo != b.quality[i].lo || a.quality[i].hi != b.quality[i].hi) return false;
  }
  return a.codec_probs == b.codec_probs && a.speed.lo == b.speed.lo && a.speed.hi == b.speed.hi &&
         a.preset_probs == b.preset_probs;
}

DegradationConfig DegradationConfig::defaults() { return {{default_stage(1), default_stage(2)}}; }

DegradationConfig DegradationConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read degradation config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

DegradationConfig DegradationConfig::parse(const std::string& yaml_text) {
  auto cfg = defaults();
  try {
    const YAML::Node root = YAML::Load(yaml_text);
    if (root && !root.IsNull()) {
      allow_keys(root, {"stage1", "stage2"}, "degradation config");
      for (int s = 0; s < 2; ++s) {
        const std::string key = "stage" + std::to_string(s + 1);
        const YAML::Node stage = root[key];
        if (!stage) continue;
        allow_keys(stage, {"blur", "noise", "resize", "compression"}, key);
        auto& sc = cfg.stages[static_cast<std::size_t>(s)];
        read_blur(stage["blur"], key + ".blur", sc.blur);
        read_noise(stage["noise"], key + ".noise", sc.noise);
        read_resize(stage["resize"], key + ".resize", sc.resize);
        read_compression(stage["compression"], key + ".compression", sc.compression);
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("degradation config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void DegradationConfig::validate() const {
  for (int s = 0; s < 2; ++s) {
    const auto& st = stages[static_cast<std::size_t>(s)];
    const std::string p = "stage" + std::to_string(s + 1);

    if (st.blur.kernel_sizes.empty()) throw ConfigError(p + ".blur.kernel_sizes: must not be empty");
    for (int k : st.blur.kernel_sizes) {
      if (k < 3 || k > 21 || k % 2 == 0) throw ConfigError(p + ".blur.kernel_sizes: sizes must be odd, 3 to 21");
    }
    check_probs(st.blur.kind_probs.data(), st.blur.kind_probs.size(), p + ".blur.kernel_types");
    check_range(st.blur.sigma, 1e-6, 1e3, p + ".blur.sigma");
    check_range(st.blur.betag, 1e-6, 1e3, p + ".blur.betag");
    check_range(st.blur.betap, 1e-6, 1e3, p + ".blur.betap");
    if (st.blur.betag.lo > 1.0 || st.blur.betag.hi < 1.0 || st.blur.betap.lo > 1.0 || st.blur.betap.hi < 1.0) {
      throw ConfigError(p + ".blur: beta ranges must contain 1");
    }
    if (!(st.blur.sinc_prob >= 0.0 && st.blur.sinc_prob <= 1.0)) throw ConfigError(p + ".blur.sinc_prob: not in [0, 1]");

    const std::array<double, 2> family{st.noise.gaussian_prob, 1.0 - st.noise.gaussian_prob};
    check_probs(family.data(), family.size(), p + ".noise.gaussian_prob");
    if (!(st.noise.gray_prob >= 0.0 && st.noise.gray_prob <= 1.0)) throw ConfigError(p + ".noise.gray_prob: not in [0, 1]");
    check_range(st.noise.gaussian_sigma, 0.0, 255.0, p + ".noise.gaussian_sigma");
    check_range(st.noise.poisson_scale, 0.0, 1e3, p + ".noise.poisson_scale");

    const std::array<double, 3> modes{st.resize.up_prob, st.resize.down_prob, st.resize.keep_prob};
    check_probs(modes.data(), modes.size(), p + ".resize.modes");
    check_range(st.resize.range, 1e-3, 1e3, p + ".resize.range");
    if (st.resize.up_prob > 0.0 && !(st.resize.range.hi > 1.0)) {
      throw ConfigError(p + ".resize.range: upscaling needs an upper bound above 1");
    }
    if (st.resize.down_prob > 0.0 && !(st.resize.range.lo < 1.0)) {
      throw ConfigError(p + ".resize.range: downscaling needs a lower bound below 1");
    }
    if (st.resize.interps.empty()) throw ConfigError(p + ".resize.interpolations: must not be empty");

    const auto& c = st.compression;
    check_probs(c.codec_probs.data(), c.codec_probs.size(), p + ".compression.codecs");
    for (std::size_t i = 0; i < codec::kAllCodecs.size(); ++i) {
      const auto name = std::string(to_string(codec::kAllCodecs[i]));
      check_int_range(c.quality[i], codec::quality_range(codec::kAllCodecs[i]), p + ".compression.quality." + name);
    }
    check_int_range(c.speed, codec::kSpeedRange, p + ".compression.speed");
    check_probs(c.preset_probs.data(), c.preset_probs.size(), p + ".compression.presets");
  }
}

std::string DegradationConfig::to_yaml() const {
  YAML::Node root(YAML::NodeType::Map);
  for (int s = 0; s < 2; ++s) {
    const auto& st = stages[static_cast<std::size_t>(s)];
    YAML::Node stage(YAML::NodeType::Map);

    YAML::Node blur(YAML::NodeType::Map);
    YAML::Node sizes(YAML::NodeType::Sequence);
    for (int k : st.blur.kernel_sizes) sizes.push_back(k);
    sizes.SetStyle(YAML::EmitterStyle::Flow);
    blur["kernel_sizes"] = sizes;
    blur["kernel_types"] = probs_node(st.blur.kind_probs, kSampledKernelKinds);
    blur["sigma"] = range_node(st.blur.sigma.lo, st.blur.sigma.hi);
    blur["betag"] = range_node(st.blur.betag.lo, st.blur.betag.hi);
    blur["betap"] = range_node(st.blur.betap.lo, st.blur.betap.hi);
    blur["sinc_prob"] = st.blur.sinc_prob;
    stage["blur"] = blur;

    YAML::Node noise(YAML::NodeType::Map);
    noise["gaussian_prob"] = st.noise.gaussian_prob;
    noise["gaussian_sigma"] = range_node(st.noise.gaussian_sigma.lo, st.noise.gaussian_sigma.hi);
    noise["poisson_scale"] = range_node(st.noise.poisson_scale.lo, st.noise.poisson_scale.hi);
    noise["gray_prob"] = st.noise.gray_prob;
    stage["noise"] = noise;

    YAML::Node resize(YAML::NodeType::Map);
    YAML::Node modes(YAML::NodeType::Map);
    modes["up"] = st.resize.up_prob;
    modes["down"] = st.resize.down_prob;
    modes["keep"] = st.resize.keep_prob;
    resize["modes"] = modes;
    resize["range"] = range_node(st.resize.range.lo, st.resize.range.hi);
    YAML::Node interps(YAML::NodeType::Sequence);
    for (auto i : st.resize.interps) interps.push_back(std::string(to_string(i)));
    interps.SetStyle(YAML::EmitterStyle::Flow);
    resize["interpolations"] = interps;
    stage["resize"] = resize;

    const auto& c = st.compression;
    YAML::Node comp(YAML::NodeType::Map);
    comp["codecs"] = probs_node(c.codec_probs, codec::kAllCodecs);
    YAML::Node quality(YAML::NodeType::Map);
    for (std::size_t i = 0; i < codec::kAllCodecs.size(); ++i) {
      if (c.codec_probs[i] > 0.0) {
        quality[std::string(to_string(codec::kAllCodecs[i]))] = range_node(c.quality[i].lo, c.quality[i].hi);
      }
    }
    comp["quality"] = quality;
    comp["speed"] = range_node(c.speed.lo, c.speed.hi);
    comp["presets"] = probs_node(c.preset_probs, codec::kAllPresets);
    stage["compression"] = comp;

    root["stage" + std::to_string(s + 1)] = stage;
  }
  YAML::Emitter out;
  out.SetDoublePrecision(15);
  out << root;
  return std::string(out.c_str()) + "\n";
}

nlohmann::json DegradationConfig::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& st : stages) {
    nlohmann::json s;
    s["blur"] = {{"kernel_sizes", st.blur.kernel_sizes},
                 {"kernel_types", st.blur.kind_probs},
                 {"sigma", {st.blur.sigma.lo, st.blur.sigma.hi}},
                 {"betag", {st.blur.betag.lo, st.blur.betag.hi}},
                 {"betap", {st.blur.betap.lo, st.blur.betap.hi}},
                 {"sinc_prob", st.blur.sinc_prob}};
    s["noise"] = {{"gaussian_prob", st.noise.gaussian_prob},
                  {"gaussian_sigma", {st.noise.gaussian_sigma.lo, st.noise.gaussian_sigma.hi}},
                  {"poisson_scale", {st.noise.poisson_scale.lo, st.noise.poisson_scale.hi}},
                  {"gray_prob", st.noise.gray_prob}};
    std::vector<std::string> interps;
    for (auto i : st.resize.interps) interps.emplace_back(to_string(i));
    s["resize"] = {{"modes", {st.resize.up_prob, st.resize.down_prob, st.resize.keep_prob}},
                   {"range", {st.resize.range.lo, st.resize.range.hi}},
                   {"interpolations", interps}};
    nlohmann::json q = nlohmann::json::object();
    for (std::size_t i = 0; i < codec::kAllCodecs.size(); ++i) {
      q[std::string(to_string(codec::kAllCodecs[i]))] = {st.compression.quality[i].lo, st.compression.quality[i].hi};
    }
    s["compression"] = {{"codecs", st.compression.codec_probs},
                        {"quality", q},
                        {"speed", {st.compression.speed.lo, st.compression.speed.hi}},
                        {"presets", st.compression.preset_probs}};
    j.push_back(s);
  }
  return j;
}

}  // namespace datakit::degrade

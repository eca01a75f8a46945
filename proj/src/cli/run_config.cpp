#include "datakit/cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "datakit/core/error.hpp"

namespace datakit::cli {

namespace {

void allow_keys(const YAML::Node& node, const std::set<std::string>& keys, const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!keys.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (const auto v = node[key]) {
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(std::string("bad value for '") + key + "'");
    }
  }
}

void read_path(const YAML::Node& node, const char* key, std::optional<std::filesystem::path>& out) {
  if (const auto v = node[key]) {
    if (v.IsNull()) {
      out.reset();
    } else {
      out = v.as<std::string>();
    }
  }
}

nlohmann::json optional_path(const std::optional<std::filesystem::path>& p) {
  return p ? nlohmann::json(p->generic_string()) : nlohmann::json();
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::curate: return "curate";
    case Command::enhance: return "enhance";
    case Command::degrade: return "degrade";
    case Command::pairs: return "pairs";
    case Command::stats: return "stats";
  }
  return "";
}

Command command_from_string(std::string_view s) {
  for (auto c : {Command::curate, Command::enhance, Command::degrade, Command::pairs, Command::stats}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown command: " + std::string(s));
}

void RunConfig::validate() const {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (scale < 1) throw ConfigError("scale must be at least 1");
  if (hr_patch < 1 || hr_patch % scale != 0) throw ConfigError("patch size must be a positive multiple of scale");
  if (patches_per_image < 1) throw ConfigError("patches per image must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (histogram_bins < 1) throw ConfigError("histogram bins must be at least 1");
  if (enhance_suffix.empty()) throw ConfigError("enhance suffix must not be empty");
  scorer.validate();
  try {
    enhance.validate();
  } catch (const RangeError& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json inputs_json = nlohmann::json::array();
  for (const auto& p : inputs) inputs_json.push_back(p.generic_string());
  const auto& s = enhance.sharpen;
  const auto& x = enhance.xdog;
  return {
      {"command", to_string(command)},
      {"inputs", inputs_json},
      {"out", out_dir.generic_string()},
      {"seed", master_seed},
      {"degradation_config", optional_path(degradation_config)},
      {"scorer",
       {{"kind", scorer.kind == curation::ScorerKind::builtin_proxy ? "builtin" : "external"},
        {"path", optional_path(scorer.external_path)}}},
      {"k", k},
      {"scale", scale},
      {"patch", hr_patch},
      {"patches", patches_per_image},
      {"workers", workers},
      {"strict", strict},
      {"trace", trace},
      {"rejections", optional_path(rejections)},
      {"bins", histogram_bins},
      {"enhance",
       {{"rounds", s.rounds},
        {"amount", s.amount},
        {"radius", s.radius},
        {"clip", s.clip},
        {"outlier_threshold", enhance.outlier_threshold},
        {"dilate_passes", enhance.dilate_passes},
        {"suffix", enhance_suffix},
        {"xdog",
         {{"sigma", x.sigma}, {"k", x.k}, {"tau", x.tau}, {"phi", x.phi}, {"epsilon", x.epsilon},
          {"line_level", x.line_level}}}}},
  };
}

void apply_yaml(RunConfig& cfg, const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("run config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) return;
  allow_keys(root,
             {"seed", "out", "degradation_config", "scorer", "k", "scale", "patch", "patches", "workers", "strict",
              "trace", "rejections", "bins", "enhance"},
             "run config");
  read(root, "seed", cfg.master_seed);
  if (root["out"]) cfg.out_dir = root["out"].as<std::string>();
  read_path(root, "degradation_config", cfg.degradation_config);
  read(root, "k", cfg.k);
  read(root, "scale", cfg.scale);
  read(root, "patch", cfg.hr_patch);
  read(root, "patches", cfg.patches_per_image);
  read(root, "workers", cfg.workers);
  read(root, "strict", cfg.strict);
  read(root, "trace", cfg.trace);
  read_path(root, "rejections", cfg.rejections);
  read(root, "bins", cfg.histogram_bins);

  if (const auto sc = root["scorer"]) {
    allow_keys(sc, {"kind", "path"}, "scorer");
    const auto kind = sc["kind"] ? sc["kind"].as<std::string>() : std::string("builtin");
    if (kind == "builtin") {
      cfg.scorer = curation::ScorerConfig::builtin();
    } else if (kind == "external") {
      if (!sc["path"]) throw ConfigError("external scorer needs a path");
      cfg.scorer = curation::ScorerConfig::external(sc["path"].as<std::string>());
    } else {
      throw ConfigError("unknown scorer kind: " + kind);
    }
  }

  if (const auto en = root["enhance"]) {
    allow_keys(en, {"rounds", "amount", "radius", "clip", "outlier_threshold", "dilate_passes", "suffix", "xdog"},
               "enhance");
    read(en, "rounds", cfg.enhance.sharpen.rounds);
    read(en, "amount", cfg.enhance.sharpen.amount);
    read(en, "radius", cfg.enhance.sharpen.radius);
    read(en, "clip", cfg.enhance.sharpen.clip);
    read(en, "outlier_threshold", cfg.enhance.outlier_threshold);
    read(en, "dilate_passes", cfg.enhance.dilate_passes);
    read(en, "suffix", cfg.enhance_suffix);
    if (const auto xd = en["xdog"]) {
      allow_keys(xd, {"sigma", "k", "tau", "phi", "epsilon", "line_level"}, "enhance.xdog");
      read(xd, "sigma", cfg.enhance.xdog.sigma);
      read(xd, "k", cfg.enhance.xdog.k);
      read(xd, "tau", cfg.enhance.xdog.tau);
      read(xd, "phi", cfg.enhance.xdog.phi);
      read(xd, "epsilon", cfg.enhance.xdog.epsilon);
      read(xd, "line_level", cfg.enhance.xdog.line_level);
    }
  }
}

void apply_yaml_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read run config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  apply_yaml(cfg, text.str());
}

}  // namespace datakit::cli

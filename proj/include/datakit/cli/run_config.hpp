#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "datakit/curation/complexity.hpp"
#include "datakit/lines/enhance.hpp"

namespace datakit::cli {

enum class Command { curate, enhance, degrade, pairs, stats };

std::string_view to_string(Command c) noexcept;
Command command_from_string(std::string_view s);

/// Everything one batch run needs. Values come from the shipped defaults,
/// then a YAML run file, then command-line flags, each layer overriding the
/// one before.
struct RunConfig {
  Command command = Command::curate;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = "out";
  std::uint64_t master_seed = 0;
  /// Degradation model YAML; the built-in defaults when unset.
  std::optional<std::filesystem::path> degradation_config;
  curation::ScorerConfig scorer;
  std::size_t k = 10;
  int scale = 4;
  int hr_patch = 256;
  int patches_per_image = 1;
  unsigned workers = 1;
  bool strict = false;
  bool trace = false;
  /// Output file names (one per line) to withhold during curation.
  std::optional<std::filesystem::path> rejections;
  lines::EnhanceConfig enhance;
  std::string enhance_suffix = "_pseudo_gt";
  int histogram_bins = 10;

  /// Throws ConfigError on a value no command can run with.
  void validate() const;
  /// Effective configuration as recorded in the manifest header.
  nlohmann::json to_json() const;
};

/// Overrides fields present in the YAML text. Unknown keys are an error.
void apply_yaml(RunConfig& cfg, const std::string& yaml_text);
/// Reads the file and applies it; throws IoError if unreadable.
void apply_yaml_file(RunConfig& cfg, const std::filesystem::path& path);

}  // namespace datakit::cli

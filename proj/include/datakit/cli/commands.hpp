#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "datakit/cli/run_config.hpp"
#include "datakit/core/manifest.hpp"

namespace datakit::cli {

inline constexpr const char* kManifestName = "manifest.jsonl";
inline constexpr const char* kFailurePrefix = "failed: ";

/// Result of a batch command. Failed items appear in the manifest as
/// rejected entries whose reason starts with kFailurePrefix.
struct CommandOutcome {
  Manifest manifest;
  std::size_t failures = 0;

  /// 1 when strict and something failed, else 0.
  int exit_code(bool strict) const noexcept { return strict && failures > 0 ? 1 : 0; }
};

/// "datakit <version>; <codec library version>".
std::string tool_version();

/// Image files under each input (directories are listed non-recursively),
/// sorted by path.
std::vector<std::filesystem::path> collect_images(const std::vector<std::filesystem::path>& inputs);

/// Per video: probe, extract I-frames, score, keep the top k, rescale to 720
/// lines and write images/<video>_f<index>.png.
CommandOutcome cmd_curate(const std::vector<std::filesystem::path>& videos, const RunConfig& cfg);

/// Writes <stem><suffix>.png per image, plus the five trace panels under
/// trace/ when tracing.
CommandOutcome cmd_enhance(const std::vector<std::filesystem::path>& images, const RunConfig& cfg);

/// Item i of the sorted input list draws its plan from (seed, i). Writes
/// lr/<stem>.png and plans/<stem>.json.
CommandOutcome cmd_degrade(const std::vector<std::filesystem::path>& images, const RunConfig& cfg);

/// Matches HR and LR files by stem and writes aligned crops to
/// hr/<stem>_p<n>.png and lr/<stem>_p<n>.png.
CommandOutcome cmd_pairs(const std::filesystem::path& hr_dir, const std::filesystem::path& lr_dir,
                         const RunConfig& cfg);

/// Dispatches on cfg.command with cfg.inputs, prints a one-line summary (or
/// the stats summary) to `out` and returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out);

}  // namespace datakit::cli

// datakit: batch commands for building anime super-resolution datasets.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "datakit/cli/commands.hpp"
#include "datakit/cli/run_config.hpp"
#include "datakit/core/error.hpp"

namespace {

using datakit::cli::Command;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<int> scale;
  std::optional<int> patch;
  std::optional<int> patches;
  std::optional<unsigned> workers;
  std::optional<std::string> degradation;
  std::optional<std::string> scores;
  std::optional<std::string> reject;
  std::optional<int> bins;
  bool strict = false;
  bool trace = false;
  std::string out;
  std::vector<std::string> inputs;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "YAML run file")->envname("DATAKIT_CONFIG");
  sub->add_option("--seed", f.seed, "master seed")->envname("DATAKIT_SEED");
  sub->add_option("--k", f.k, "frames kept per video")->envname("DATAKIT_K");
  sub->add_option("--scale", f.scale, "HR/LR scale factor")->envname("DATAKIT_SCALE");
  sub->add_option("--patch", f.patch, "HR patch size")->envname("DATAKIT_PATCH");
  sub->add_option("--patches", f.patches, "patches per image")->envname("DATAKIT_PATCHES");
  sub->add_option("--workers", f.workers, "worker threads")->envname("DATAKIT_WORKERS");
  sub->add_option("--degradation", f.degradation, "degradation model YAML")->envname("DATAKIT_DEGRADATION");
  sub->add_option("--scores", f.scores, "external complexity scores (path<TAB>score)")->envname("DATAKIT_SCORES");
  sub->add_option("--reject", f.reject, "file names to withhold, one per line")->envname("DATAKIT_REJECT");
  sub->add_option("--bins", f.bins, "histogram bins")->envname("DATAKIT_BINS");
  sub->add_flag("--strict", f.strict, "exit 1 if any item failed")->envname("DATAKIT_STRICT");
  sub->add_flag("--trace", f.trace, "keep intermediates")->envname("DATAKIT_TRACE");
  sub->add_option("--out", f.out, "output directory")->envname("DATAKIT_OUT");
  sub->add_option("inputs", f.inputs, "input files or directories");
}

datakit::cli::RunConfig resolve(Command command, const Flags& f) {
  datakit::cli::RunConfig cfg;
  cfg.command = command;
  cfg.workers = 1;
  if (f.config) datakit::cli::apply_yaml_file(cfg, *f.config);
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.k) cfg.k = *f.k;
  if (f.scale) cfg.scale = *f.scale;
  if (f.patch) cfg.hr_patch = *f.patch;
  if (f.patches) cfg.patches_per_image = *f.patches;
  if (f.workers) cfg.workers = *f.workers;
  if (f.degradation) cfg.degradation_config = *f.degradation;
  if (f.scores) cfg.scorer = datakit::curation::ScorerConfig::external(*f.scores);
  if (f.reject) cfg.rejections = *f.reject;
  if (f.bins) cfg.histogram_bins = *f.bins;
  if (f.strict) cfg.strict = true;
  if (f.trace) cfg.trace = true;
  if (!f.out.empty()) cfg.out_dir = f.out;
  for (const auto& in : f.inputs) cfg.inputs.emplace_back(in);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dataset tooling for anime super-resolution: curation, line enhancement, degradation, pairing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", [] { return datakit::cli::tool_version(); });

  Flags flags;
  std::optional<Command> chosen;
  const std::pair<Command, const char*> subs[] = {
      {Command::curate, "pick the most complex I-frames of each video and rescale them to 720 lines"},
      {Command::enhance, "write pseudo ground truth with sharpened hand-drawn lines"},
      {Command::degrade, "synthesize LR images with sampled degradation plans"},
      {Command::pairs, "cut aligned HR/LR patch pairs (inputs: HR_DIR LR_DIR)"},
      {Command::stats, "frame-size and complexity statistics for videos or manifests"},
  };
  for (const auto& [cmd, help] : subs) {
    auto* sub = app.add_subcommand(std::string(datakit::cli::to_string(cmd)), help);
    add_flags(sub, flags);
    sub->callback([&chosen, cmd = cmd] { chosen = cmd; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = resolve(*chosen, flags);
    return datakit::cli::run(cfg, std::cout);
  } catch (const datakit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

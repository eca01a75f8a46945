#include "datakit/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "datakit/cli/stats.hpp"
#include "datakit/codec/codec_bridge.hpp"
#include "datakit/core/error.hpp"
#include "datakit/core/image_io.hpp"
#include "datakit/core/worker_pool.hpp"
#include "datakit/curation/selection.hpp"
#include "datakit/degrade/crop.hpp"
#include "datakit/degrade/execute.hpp"
#include "datakit/lines/enhance.hpp"

namespace datakit::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ItemResult {
  std::vector<ManifestEntry> entries;
  std::size_t failures = 0;
};

ManifestEntry failure_entry(const fs::path& source, const std::string& what) {
  ManifestEntry e;
  e.source_path = source.generic_string();
  e.rejected = true;
  e.reject_reason = kFailurePrefix + what;
  return e;
}

/// Runs `work` for every item on the worker pool. Errors become failure
/// entries; entries are written in item order regardless of scheduling.
CommandOutcome run_items(const std::vector<fs::path>& items, const RunConfig& cfg, ManifestHeader header,
                         const std::function<void(std::size_t, ItemResult&)>& work) {
  fs::create_directories(cfg.out_dir);
  std::vector<ItemResult> results(items.size());
  parallel_for(items.size(), cfg.workers, [&](std::size_t i) {
    try {
      work(i, results[i]);
    } catch (const std::exception& e) {
      results[i].entries.push_back(failure_entry(items[i], e.what()));
      ++results[i].failures;
    }
  });

  CommandOutcome outcome;
  outcome.manifest.header = header;
  ManifestWriter writer(cfg.out_dir / kManifestName, header);
  for (auto& r : results) {
    for (auto& e : r.entries) {
      writer.append(e);
      outcome.manifest.entries.push_back(std::move(e));
    }
    outcome.failures += r.failures;
  }
  return outcome;
}

ManifestHeader make_header(const RunConfig& cfg) { return {std::string(to_string(cfg.command)), tool_version(), cfg.to_json()}; }

std::string rel(const fs::path& p) { return p.generic_string(); }

/// Rejects a second input that would write to the same output names.
void claim_stem(std::set<std::string>& taken, const std::vector<fs::path>& items, std::vector<std::string>& clash) {
  clash.assign(items.size(), {});
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto stem = items[i].stem().string();
    if (!taken.insert(stem).second) clash[i] = "another input already uses the name '" + stem + "'";
  }
}

std::set<std::string> load_rejections(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read rejection list " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    out.insert(line.substr(start));
  }
  return out;
}

bool is_image_file(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".webp";
}

}  // namespace

std::string tool_version() { return std::string("datakit ") + kVersion + "; " + codec::probe_tooling().tool_version; }

std::vector<fs::path> collect_images(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) out.push_back(entry.path());
      }
    } else {
      out.push_back(in);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CommandOutcome cmd_curate(const std::vector<fs::path>& videos, const RunConfig& cfg) {
  cfg.validate();
  const curation::ComplexityScorer scorer(cfg.scorer);
  const auto rejected = cfg.rejections ? load_rejections(*cfg.rejections) : std::set<std::string>{};
  fs::create_directories(cfg.out_dir / "images");

  std::set<std::string> taken;
  std::vector<std::string> clash;
  claim_stem(taken, videos, clash);

  auto outcome = run_items(videos, cfg, make_header(cfg), [&](std::size_t i, ItemResult& r) {
    if (!clash[i].empty()) throw ConfigError(clash[i]);
    const auto& video = videos[i];
    const auto id = curation::video_id_for(video);
    const auto records = curation::probe_frames(video);
    const auto pool = cfg.out_dir / "pool" / id;
    const auto frames = curation::extract_iframes(video, pool);

    std::map<std::int64_t, curation::FrameRecord> by_index;
    for (const auto& rec : records) by_index.emplace(rec.frame_index, rec);
    std::vector<curation::ScoredFrame> scored;
    for (const auto& path : frames) {
      const auto parsed = curation::parse_frame_file_name(path.filename().string());
      if (!parsed) throw DecodeError("unexpected pool file " + path.string());
      const auto img = load_image(path);
      scored.push_back({by_index.at(parsed->second), scorer.score(img, path.filename().string())});
    }

    for (const auto& sel : curation::select_top_k(scored, cfg.k)) {
      const auto name = curation::frame_file_name(id, sel.record.frame_index);
      const auto out_rel = fs::path("images") / name;
      ManifestEntry e;
      e.source_path = rel(video);
      e.source_video_id = id;
      e.frame_index = sel.record.frame_index;
      e.picture_type = std::string(curation::to_string(sel.record.picture_type));
      e.complexity_score = sel.score.value;
      e.scorer_id = sel.score.scorer_id;
      e.output_path = rel(out_rel);
      if (rejected.count(name) || rejected.count(rel(out_rel))) {
        e.rejected = true;
        e.reject_reason = "manual rejection";
      } else {
        const auto img = load_image(pool / name);
        e.rescaled_720p = img.height() != curation::kTargetHeight;
        e.upscaled = img.height() < curation::kTargetHeight;
        save_image(curation::rescale_720(img), cfg.out_dir / out_rel, ImageFormat::png);
      }
      r.entries.push_back(std::move(e));
    }
    if (!cfg.trace) fs::remove_all(pool);
  });
  if (!cfg.trace) fs::remove_all(cfg.out_dir / "pool");
  return outcome;
}

CommandOutcome cmd_enhance(const std::vector<fs::path>& images, const RunConfig& cfg) {
  cfg.validate();
  if (cfg.trace) fs::create_directories(cfg.out_dir / "trace");
  std::set<std::string> taken;
  std::vector<std::string> clash;
  claim_stem(taken, images, clash);

  return run_items(images, cfg, make_header(cfg), [&](std::size_t i, ItemResult& r) {
    if (!clash[i].empty()) throw ConfigError(clash[i]);
    const auto& src = images[i];
    const auto stem = src.stem().string();
    const auto gt = load_image(src);
    const auto result = lines::enhance(gt, cfg.enhance, cfg.trace);
    const auto out_rel = fs::path(stem + cfg.enhance_suffix + ".png");
    const auto out_path = cfg.out_dir / out_rel;
    auto ext = src.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (result.pseudo_gt == gt && ext == ".png") {
      fs::copy_file(src, out_path, fs::copy_options::overwrite_existing);
    } else {
      save_image(result.pseudo_gt, out_path, ImageFormat::png);
    }
    ManifestEntry e;
    e.source_path = rel(src);
    e.output_path = rel(out_rel);
    e.item_index = i;
    if (cfg.trace) {
      lines::write_trace(result, cfg.out_dir / "trace", stem);
      for (const char* suffix : {"_sharp", "_xdog", "_filtered", "_dilated", "_pseudo_gt"}) {
        e.extra_outputs.push_back(rel(fs::path("trace") / (stem + suffix + ".png")));
      }
    }
    r.entries.push_back(std::move(e));
  });
}

CommandOutcome cmd_degrade(const std::vector<fs::path>& images, const RunConfig& cfg) {
  cfg.validate();
  const auto dcfg = cfg.degradation_config ? degrade::DegradationConfig::load(*cfg.degradation_config)
                                           : degrade::DegradationConfig::defaults();
  fs::create_directories(cfg.out_dir / "lr");
  fs::create_directories(cfg.out_dir / "plans");
  auto header = make_header(cfg);
  header.config["degradation"] = dcfg.to_json();
  std::set<std::string> taken;
  std::vector<std::string> clash;
  claim_stem(taken, images, clash);

  return run_items(images, cfg, header, [&](std::size_t i, ItemResult& r) {
    if (!clash[i].empty()) throw ConfigError(clash[i]);
    const auto& src = images[i];
    const auto stem = src.stem().string();
    const auto hr = load_image(src);
    const auto plan = degrade::sample_plan(hr.width(), hr.height(), cfg.scale, dcfg, {cfg.master_seed, i, "degrade"});
    const auto lr = degrade::execute_plan(hr, plan);
    const auto lr_rel = fs::path("lr") / (stem + ".png");
    const auto plan_rel = fs::path("plans") / (stem + ".json");
    save_image(lr, cfg.out_dir / lr_rel, ImageFormat::png);
    const auto text = degrade::serialize(plan);
    write_file(cfg.out_dir / plan_rel,
               std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    ManifestEntry e;
    e.source_path = rel(src);
    e.output_path = rel(lr_rel);
    e.extra_outputs = {rel(plan_rel)};
    e.plan_digest = degrade::plan_digest(plan);
    e.item_index = i;
    e.master_seed = cfg.master_seed;
    r.entries.push_back(std::move(e));
  });
}

CommandOutcome cmd_pairs(const fs::path& hr_dir, const fs::path& lr_dir, const RunConfig& cfg) {
  cfg.validate();
  if (!fs::is_directory(hr_dir)) throw IoError("not a directory: " + hr_dir.string());
  if (!fs::is_directory(lr_dir)) throw IoError("not a directory: " + lr_dir.string());
  fs::create_directories(cfg.out_dir / "hr");
  fs::create_directories(cfg.out_dir / "lr");

  const auto hr_files = collect_images({hr_dir});
  std::map<std::string, fs::path> lr_by_stem;
  for (const auto& p : collect_images({lr_dir})) lr_by_stem.emplace(p.stem().string(), p);
  std::set<std::string> hr_stems;
  for (const auto& p : hr_files) hr_stems.insert(p.stem().string());

  // HR items first, then LR files nobody claimed, so every input is accounted for.
  std::vector<fs::path> items = hr_files;
  for (const auto& [stem, p] : lr_by_stem) {
    if (!hr_stems.count(stem)) items.push_back(p);
  }
  std::set<std::string> taken;
  std::vector<std::string> clash;
  claim_stem(taken, hr_files, clash);

  return run_items(items, cfg, make_header(cfg), [&](std::size_t i, ItemResult& r) {
    const auto stem = items[i].stem().string();
    if (i >= hr_files.size()) throw ConfigError("LR image '" + stem + "' has no HR counterpart");
    if (!clash[i].empty()) throw ConfigError(clash[i]);
    const auto lr_it = lr_by_stem.find(stem);
    if (lr_it == lr_by_stem.end()) throw ConfigError("HR image '" + stem + "' has no LR counterpart");
    const auto hr = load_image(items[i]);
    const auto lr = load_image(lr_it->second);
    auto stream = derive_stream({cfg.master_seed, i, "pairs"});
    const auto pairs = degrade::crop_pairs(hr, lr, cfg.hr_patch, cfg.scale, stream, cfg.patches_per_image);
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_p%03zu.png", n);
      const auto hr_rel = fs::path("hr") / (stem + suffix);
      const auto lr_rel = fs::path("lr") / (stem + suffix);
      save_image(pairs[n].hr, cfg.out_dir / hr_rel, ImageFormat::png);
      save_image(pairs[n].lr, cfg.out_dir / lr_rel, ImageFormat::png);
      ManifestEntry e;
      e.source_path = rel(items[i]);
      e.output_path = rel(hr_rel);
      e.extra_outputs = {rel(lr_rel)};
      e.item_index = i;
      e.master_seed = cfg.master_seed;
      r.entries.push_back(std::move(e));
    }
  });
}

int run(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (cfg.command == Command::stats) {
    const auto report = cmd_stats(cfg.inputs, cfg);
    out << report.summary;
    return cfg.strict && report.failures > 0 ? 1 : 0;
  }
  CommandOutcome outcome;
  switch (cfg.command) {
    case Command::curate: outcome = cmd_curate(cfg.inputs, cfg); break;
    case Command::enhance: outcome = cmd_enhance(collect_images(cfg.inputs), cfg); break;
    case Command::degrade: outcome = cmd_degrade(collect_images(cfg.inputs), cfg); break;
    case Command::pairs:
      if (cfg.inputs.size() != 2) throw ConfigError("pairs takes exactly two inputs: HR_DIR LR_DIR");
      outcome = cmd_pairs(cfg.inputs[0], cfg.inputs[1], cfg);
      break;
    case Command::stats: break;
  }
  out << to_string(cfg.command) << ": " << outcome.manifest.emitted_count() << " files written, "
      << outcome.manifest.rejected_count() - outcome.failures << " rejected, " << outcome.failures << " failed -> "
      << (cfg.out_dir / kManifestName).string() << "\n";
  return outcome.exit_code(cfg.strict);
}

}  // namespace datakit::cli

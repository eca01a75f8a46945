// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "datakit/cli/commands.hpp"
#include "datakit/codec/codec_bridge.hpp"
#include "datakit/core/image_io.hpp"
#include "datakit/curation/frames.hpp"
#include "datakit/degrade/plan.hpp"
#include "datakit/lines/enhance.hpp"
#include "support/fixtures.hpp"
#include "support/map_oracles.hpp"
#include "support/stats.hpp"
#include "support/synthetic_clip.hpp"

using namespace datakit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. Sampler distributions.
Verdict sampler_distributions() {
  Verdict v;
  constexpr int kN = 100000;
  const auto cfg = degrade::DegradationConfig::defaults();
  std::map<std::string, std::map<std::string, double>> freq;
  std::map<std::string, std::map<int, double>> quality;
  std::map<std::string, double> totals;
  for (int i = 0; i < kN; ++i) {
    const auto plan = degrade::sample_plan(64, 48, 4, cfg, {7, static_cast<std::uint64_t>(i), "acceptance"});
    for (const auto& step : plan.steps) {
      if (const auto* c = std::get_if<degrade::CompressionOp>(&step)) {
        const auto group = "stage" + std::to_string(c->stage) + " codec";
        freq[group][std::string(codec::to_string(c->spec.codec))] += 1;
        totals[group] += 1;
        if (codec::is_video_codec(c->spec.codec)) {
          freq["preset"][std::string(codec::to_string(c->spec.preset))] += 1;
          totals["preset"] += 1;
        }
        quality[std::string(codec::to_string(c->spec.codec))][c->spec.quality] += 1;
      } else if (const auto* r = std::get_if<degrade::ResizeOp>(&step)) {
        freq["resize mode"][std::string(degrade::to_string(r->resize.mode))] += 1;
        totals["resize mode"] += 1;
      }
    }
  }
  const std::map<std::string, std::map<std::string, double>> expected{
      {"stage1 codec", {{"jpeg", 0.4}, {"webp", 0.6}}},
      {"stage2 codec",
       {{"jpeg", 0.06}, {"webp", 0.10}, {"avif", 0.10}, {"mpeg2", 0.12}, {"mpeg4", 0.12}, {"h264", 0.30}, {"h265", 0.20}}},
      {"preset", {{"slow", 0.05}, {"medium", 0.35}, {"fast", 0.30}, {"faster", 0.20}, {"superfast", 0.10}}},
      {"resize mode", {{"up", 0.2}, {"down", 0.7}, {"keep", 0.1}}},
  };
  double worst = 0.0;
  for (const auto& [group, probs] : expected) {
    double seen = 0.0;
    for (const auto& [key, p] : probs) {
      const double f = freq[group][key] / totals[group];
      seen += freq[group][key];
      worst = std::max(worst, std::abs(f - p));
      v.require(std::abs(f - p) <= 0.02, group + " " + key + fmt(" frequency off by %.4f", f - p));
    }
    v.require(seen == totals[group], group + " has an unexpected category");
  }
  double worst_ratio = 0.0;
  for (const auto& [name, hist] : quality) {
    const auto range = codec::quality_range(codec::codec_from_string(name));
    std::vector<double> draws;
    for (const auto& [q, n] : hist) {
      v.require(q >= range.lo && q <= range.hi, name + " quality outside its range");
      draws.insert(draws.end(), static_cast<std::size_t>(n), q);
    }
    const double d = testing::discrete_ks_statistic(draws, range.lo, range.hi);
    const double crit = testing::ks_critical_001(draws.size());
    worst_ratio = std::max(worst_ratio, d / crit);
    v.require(d < crit, name + fmt(" quality KS D=%.5f", d));
  }
  if (v.pass) v.detail = fmt("max |freq - p| = %.4f", worst) + fmt(", max KS D/critical = %.2f", worst_ratio);
  return v;
}

// 2. Outlier filter against union-find labeling.
Verdict outlier_oracle() {
  Verdict v;
  std::size_t maps = 0;
  for (double density : {0.1, 0.3, 0.5}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto m = testing::random_map(64, 64, density, 5000 + seed * 3 + static_cast<std::uint64_t>(density * 10));
      v.require(lines::outlier_filter(m, 32) == testing::union_find_filter(m, 32), "mismatch with the oracle");
      ++maps;
    }
  }
  for (int len : {31, 32}) {
    EdgeMap m(64, 64);
    for (int i = 0; i < len; ++i) m.set(i % 16 + 4, i / 16 + 10, true);
    const auto out = lines::outlier_filter(m, 32);
    v.require(out.count() == (len == 32 ? 32u : 0u), "boundary component of size " + std::to_string(len));
  }
  if (v.pass) v.detail = std::to_string(maps) + " maps identical; sizes 31 removed and 32 kept";
  return v;
}

// 3. Passive dilation.
Verdict passive_dilation() {
  Verdict v;
  const int off[8][2] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}};
  for (int bits = 0; bits < 256; ++bits) {
    EdgeMap m(3, 3);
    int n = 0;
    for (int i = 0; i < 8; ++i) {
      if (bits >> i & 1) {
        m.set(off[i][0], off[i][1], true);
        ++n;
      }
    }
    v.require(lines::passive_dilate(m).get(1, 1) == (n >= 4), "neighborhood " + std::to_string(bits));
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = testing::random_map(64, 64, 0.05 + 0.004 * static_cast<double>(seed), 77 + seed);
    const auto out = lines::passive_dilate(m);
    v.require(m.subset_of(out), "dilation removed a pixel");
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        v.require(out.get(x, y) == (m.get(x, y) || testing::true_neighbors(m, x, y) >= 4),
                  "pixel decided from something other than the input map");
      }
    }
  }
  if (v.pass) v.detail = "256 neighborhoods exhaustive; 100 random maps superset and single-pass";
  return v;
}

// 4. Compositing.
Verdict compositing() {
  Verdict v;
  std::mt19937_64 rng(11);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int w = 8 + static_cast<int>(rng() % 120);
    const int h = 8 + static_cast<int>(rng() % 120);
    const auto gt = testing::noise_image(w, h, 1000 + i);
    const auto sharp = testing::noise_image(w, h, 2000 + i);
    const auto map = testing::random_map(w, h, static_cast<double>(rng() % 101) / 100.0, 3000 + i);
    const auto out = lines::composite_pseudo_gt(gt, sharp, map);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const auto& src = map.get(x, y) ? sharp : gt;
        for (int c = 0; c < 3; ++c) v.require(out.at(x, y, c) == src.at(x, y, c), "pixel not selected exactly");
      }
    }
    v.require(encode_image(lines::composite_pseudo_gt(gt, sharp, EdgeMap(w, h)), ImageFormat::png) ==
                  encode_image(gt, ImageFormat::png),
              "all-false map changed gt");
  }
  if (v.pass) v.detail = "100 triples bit-exact; all-false map reproduces gt";
  return v;
}

// 5. End-to-end determinism of the degrade command.
Verdict degrade_determinism(const fs::path& root) {
  Verdict v;
  fs::create_directories(root / "hr");
  for (int i = 0; i < 20; ++i) {
    save_image(testing::anime_scene(128, 96, 500 + static_cast<std::uint64_t>(i)),
               root / "hr" / ("hr" + std::to_string(100 + i) + ".png"), ImageFormat::png);
  }
  const auto inputs = cli::collect_images({root / "hr"});
  std::vector<cli::CommandOutcome> runs;
  for (auto [name, workers] : {std::pair{"a", 1u}, std::pair{"b", 1u}, std::pair{"c", 8u}}) {
    cli::RunConfig cfg;
    cfg.command = cli::Command::degrade;
    cfg.out_dir = root / name;
    cfg.master_seed = 20240;
    cfg.workers = workers;
    runs.push_back(cli::cmd_degrade(inputs, cfg));
    v.require(runs.back().failures == 0, "an item failed");
  }
  std::size_t files = 0;
  for (std::size_t i = 0; i < runs[0].manifest.entries.size(); ++i) {
    const auto& e0 = runs[0].manifest.entries[i];
    for (std::size_t r = 1; r < runs.size(); ++r) {
      const auto& e = runs[r].manifest.entries.at(i);
      v.require(e.plan_digest == e0.plan_digest, "plan digest differs");
      v.require(read_file(root / (r == 1 ? "b" : "c") / e.output_path) == read_file(root / "a" / e0.output_path),
                "LR bytes differ for " + e0.output_path);
    }
    ++files;
  }
  v.require(files == 20, "expected 20 outputs");
  if (v.pass) v.detail = "20 LR files and digests identical across 2 serial runs and 8 workers";
  return v;
}

// 6. I-frames are larger than other frames.
Verdict iframe_sizes(const fs::path& root) {
  Verdict v;
  struct Clip {
    std::string name;
    testing::ClipOptions opts;
  };
  std::vector<Clip> clips;
  for (int gop : {12, 30, 60}) {
    testing::ClipOptions o;
    o.width = 320;
    o.height = 180;
    o.frames = 120;
    o.gop = gop;
    o.fixed_gop = false;
    clips.push_back({"x264_gop" + std::to_string(gop), o});
  }
  testing::ClipOptions mpeg2;
  mpeg2.width = 320;
  mpeg2.height = 180;
  mpeg2.frames = 96;
  mpeg2.gop = 12;
  mpeg2.fixed_gop = false;
  mpeg2.codec = "mpeg2video";
  clips.push_back({"mpeg2_gop12", mpeg2});
  std::string detail;
  std::uint64_t seed = 60;
  for (const auto& c : clips) {
    const auto path = root / (c.name + ".mp4");
    testing::write_clip(path, c.opts, testing::moving_scene(c.opts.width, c.opts.height, seed++));
    const auto report = curation::frame_size_report(curation::probe_frames(path));
    v.require(report.ratio > 1.0, c.name + fmt(" ratio %.3f", report.ratio));
    detail += (detail.empty() ? "" : ", ") + c.name + fmt(" %.2f", report.ratio);
  }
  if (v.pass) v.detail = "ratios " + detail;
  return v;
}

// 7. Single-frame versus multi-frame H.264.
Verdict single_vs_multi_frame() {
  Verdict v;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto img = testing::anime_scene(192, 144, 700 + i);
    const auto single = codec::roundtrip_video_codec(img, {codec::Codec::h264, 30, 4, codec::Preset::medium});
    const auto multi = testing::multi_frame_h264_frame(img, 30, "medium", 10, 9);
    const double gap = std::abs(psnr(img, single) - psnr(img, multi));
    worst = std::max(worst, gap);
    v.require(gap < 1.5, fmt("image gap %.3f dB", gap));
  }
  if (v.pass) v.detail = fmt("max PSNR gap %.3f dB over 10 images", worst);
  return v;
}

// 8. Curation cardinality.
Verdict curation_cardinality(const fs::path& root) {
  Verdict v;
  std::vector<fs::path> videos;
  std::map<std::string, std::size_t> iframes;
  fs::create_directories(root);
  for (int i = 0; i < 3; ++i) {
    testing::ClipOptions o;
    o.width = 256;
    o.height = 144;
    o.frames = 60 + 12 * i;
    o.gop = 4;
    videos.push_back(root / ("ep" + std::to_string(i) + ".mp4"));
    testing::write_clip(videos.back(), o, testing::moving_scene(o.width, o.height, 80 + static_cast<std::uint64_t>(i)));
    std::size_t n = 0;
    for (const auto& r : curation::probe_frames(videos.back())) n += r.picture_type == curation::PictureType::I;
    iframes[curation::video_id_for(videos.back())] = n;
  }
  cli::RunConfig cfg;
  cfg.command = cli::Command::curate;
  cfg.out_dir = root / "out";
  cfg.k = 10;
  const auto out = cli::cmd_curate(videos, cfg);
  v.require(out.failures == 0, "a video failed");
  const auto on_disk = read_manifest(cfg.out_dir / cli::kManifestName);
  v.require(on_disk.entries == out.manifest.entries, "manifest file differs from the returned manifest");
  std::map<std::string, std::vector<double>> scores;
  std::size_t emitted = 0;
  for (const auto& e : out.manifest.entries) {
    v.require(!e.rejected, "unexpected rejection");
    v.require(e.source_video_id && e.frame_index && e.complexity_score && e.scorer_id && e.picture_type == "I",
              "incomplete manifest entry");
    if (!e.source_video_id || !e.complexity_score) continue;
    v.require(load_image(cfg.out_dir / e.output_path).height() == 720, e.output_path + " is not 720 tall");
    scores[*e.source_video_id].push_back(*e.complexity_score);
    ++emitted;
  }
  v.require(emitted <= 30, "more than 30 images");
  for (const auto& [id, n] : iframes) {
    const auto& s = scores[id];
    v.require(s.size() == std::min<std::size_t>(10, n), id + " kept the wrong number of frames");
    for (std::size_t i = 1; i < s.size(); ++i) v.require(s[i] <= s[i - 1], id + " scores increase");
  }
  if (v.pass) v.detail = std::to_string(emitted) + " images from 3 videos, all 720 tall, scores nonincreasing";
  return v;
}

// 9. Pair geometry.
Verdict pair_geometry(const fs::path& root) {
  Verdict v;
  fs::create_directories(root / "hr");
  for (int i = 0; i < 25; ++i) {
    save_image(testing::anime_scene(384, 320, 900 + static_cast<std::uint64_t>(i)),
               root / "hr" / ("p" + std::to_string(10 + i) + ".png"), ImageFormat::png);
  }
  cli::RunConfig cfg;
  cfg.command = cli::Command::degrade;
  cfg.out_dir = root / "deg";
  cfg.master_seed = 3;
  const auto deg = cli::cmd_degrade(cli::collect_images({root / "hr"}), cfg);
  v.require(deg.failures == 0, "degradation failed");

  cfg.command = cli::Command::pairs;
  cfg.out_dir = root / "pairs";
  cfg.patches_per_image = 20;
  const auto pairs = cli::cmd_pairs(root / "hr", root / "deg" / "lr", cfg);
  v.require(pairs.failures == 0, "pairing failed");

  std::map<std::string, std::pair<RasterImage, RasterImage>> sources;
  std::size_t checked = 0;
  for (const auto& e : pairs.manifest.entries) {
    const auto stem = fs::path(e.source_path).stem().string();
    if (!sources.count(stem)) {
      sources.emplace(stem, std::pair{load_image(e.source_path), load_image(root / "deg" / "lr" / (stem + ".png"))});
    }
    const auto& [hr, lr] = sources.at(stem);
    v.require(hr.width() == 4 * lr.width() && hr.height() == 4 * lr.height(), "source ratio is not 4");
    const auto hp = load_image(cfg.out_dir / e.output_path);
    const auto lp = load_image(cfg.out_dir / e.extra_outputs.at(0));
    v.require(hp.width() == 256 && hp.height() == 256, "HR patch is not 256x256");
    v.require(lp.width() == 64 && lp.height() == 64, "LR patch is not 64x64");
    if (lp.width() != 64 || hp.width() != 256) continue;
    // Locate the LR patch in its source and check the HR patch sits at 4x that offset.
    bool aligned = false;
    for (int y = 0; y + 64 <= lr.height() && !aligned; ++y) {
      for (int x = 0; x + 64 <= lr.width() && !aligned; ++x) {
        if (crop(lr, x, y, 64, 64) == lp && crop(hr, 4 * x, 4 * y, 256, 256) == hp) aligned = true;
      }
    }
    v.require(aligned, e.output_path + " is not aligned with its LR patch");
    ++checked;
  }
  v.require(checked == 500, "expected 500 pairs, got " + std::to_string(checked));
  if (v.pass) v.detail = std::to_string(checked) + " pairs: 256/64 patches at offsets related by 4";
  return v;
}

// 10. Enhancement fixpoints and bounds.
Verdict enhancement(const fs::path& root) {
  Verdict v;
  fs::create_directories(root / "flat");
  for (int i = 0; i < 4; ++i) {
    const auto u = static_cast<std::uint8_t>(i * 80);
    const auto img = RasterImage::filled(96 + i, 64, u, static_cast<std::uint8_t>(255 - u), 128);
    save_image(img, root / "flat" / ("c" + std::to_string(i) + ".png"), ImageFormat::png);
    v.require(lines::enhance(img, {}).pseudo_gt == img, "constant image changed");
  }
  cli::RunConfig cfg;
  cfg.command = cli::Command::enhance;
  cfg.out_dir = root / "out";
  cli::cmd_enhance(cli::collect_images({root / "flat"}), cfg);
  for (int i = 0; i < 4; ++i) {
    v.require(read_file(root / "out" / ("c" + std::to_string(i) + "_pseudo_gt.png")) ==
                  read_file(root / "flat" / ("c" + std::to_string(i) + ".png")),
              "constant output is not byte-identical");
  }
  double lo = 1.0, hi = 0.0;
  for (int variant = 0; variant < 6; ++variant) {
    for (auto [w, h] : {std::pair{256, 256}, std::pair{384, 288}, std::pair{512, 384}}) {
      const auto card = testing::line_art_card(w, h, variant);
      const auto r = lines::enhance(card, {});
      const double frac = static_cast<double>(r.map.count()) / (static_cast<double>(w) * h);
      lo = std::min(lo, frac);
      hi = std::max(hi, frac);
      v.require(frac >= 0.005 && frac <= 0.20, fmt("map fraction %.4f", frac));
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (r.map.get(x, y)) continue;
          for (int c = 0; c < 3; ++c) v.require(r.pseudo_gt.at(x, y, c) == card.at(x, y, c), "change off the map");
        }
      }
    }
  }
  if (v.pass) v.detail = "constants byte-identical; map fraction " + fmt("%.4f", lo) + fmt("..%.4f", hi);
  return v;
}

}  // namespace

int main() {
  testing::TempDir scratch("datakit-acceptance");
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "degradation sampler distributions", 60, sampler_distributions},
      {2, "outlier filter equals union-find labeling", 30, outlier_oracle},
      {3, "passive dilation rule and single pass", 5, passive_dilation},
      {4, "pseudo-GT compositing is an exact partition", 1e9, compositing},
      {5, "degrade command is deterministic", 300, [&] { return degrade_determinism(scratch / "c5"); }},
      {6, "I-frames are larger than other frames", 120, [&] { return iframe_sizes(scratch.path()); }},
      {7, "single-frame H.264 matches multi-frame encode", 180, single_vs_multi_frame},
      {8, "curation keeps top 10 per video at 720 lines", 1e9, [&] { return curation_cardinality(scratch / "c8"); }},
      {9, "HR/LR pair geometry", 1e9, [&] { return pair_geometry(scratch / "c9"); }},
      {10, "enhancement fixpoints and map bounds", 1e9, [&] { return enhancement(scratch / "c10"); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) v.require(false, fmt("took %.1f s", secs) + fmt(" (budget %.0f s)", c.budget_s));
    failed += !v.pass;
    std::printf("%s criterion %2d: %s (%.1f s) - %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

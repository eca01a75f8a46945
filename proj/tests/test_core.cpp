#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include <opencv2/imgcodecs.hpp>

#include "datakit/core/edge_map.hpp"
#include "datakit/core/error.hpp"
#include "datakit/core/image.hpp"
#include "datakit/core/image_io.hpp"
#include "datakit/core/manifest.hpp"
#include "datakit/core/random.hpp"
#include "datakit/core/worker_pool.hpp"
#include "support/fixtures.hpp"

using namespace datakit;
using datakit::testing::TempDir;

TEST_CASE("RasterImage enforces its buffer invariants") {
  RasterImage img(4, 3);
  CHECK(img.size() == 4u * 3u * 3u);
  CHECK_THROWS_AS(RasterImage(0, 5), DimensionError);
  CHECK_THROWS_AS(RasterImage(2, 2, std::vector<std::uint8_t>(11)), DimensionError);
  CHECK_THROWS_AS(EdgeMap(3, 0), DimensionError);
}

TEST_CASE("8-bit to normalized and back is the identity") {
  RasterImage img(256, 1);
  for (int v = 0; v < 256; ++v) {
    for (int c = 0; c < 3; ++c) img.at(v, 0, c) = static_cast<std::uint8_t>(v);
  }
  CHECK(denormalize(normalize(img)) == img);
}

TEST_CASE("normalize is stable through a denormalize round trip on random images") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto img = datakit::testing::noise_image(17, 9, seed);
    const auto n = normalize(img);
    CHECK(normalize(denormalize(n)) == n);
  }
}

TEST_CASE("to_u8 rounds half away from zero and clips") {
  CHECK(to_u8(-0.3f) == 0);
  CHECK(to_u8(1.7f) == 255);
  CHECK(to_u8(0.5f / 255.0f) == 1);
  CHECK(to_u8(127.5f / 255.0f) == 128);
}

TEST_CASE("luma uses Rec.601 weights") {
  const auto img = RasterImage::filled(1, 1, 255, 0, 0);
  CHECK(luma(img).at(0, 0) == doctest::Approx(0.299));
  const auto g = RasterImage::filled(1, 1, 0, 255, 0);
  CHECK(luma(g).at(0, 0) == doctest::Approx(0.587));
}

TEST_CASE("load_image decodes PNG and reports shapes") {
  TempDir dir;
  const auto img = datakit::testing::gradient_image(64, 64);
  save_image(img, dir / "a.png", ImageFormat::png);
  const auto back = load_image(dir / "a.png");
  CHECK(back.width() == 64);
  CHECK(back.height() == 64);
  CHECK(back.channels() == 3);

  save_image(RasterImage::filled(1, 1, 255, 255, 255), dir / "white.png", ImageFormat::png);
  const auto white = load_image(dir / "white.png");
  CHECK(std::vector<std::uint8_t>(white.pixels().begin(), white.pixels().end()) ==
        std::vector<std::uint8_t>{255, 255, 255});
}

TEST_CASE("load_image rejects truncated, missing and unknown files") {
  TempDir dir;
  save_image(datakit::testing::gradient_image(32, 32), dir / "full.png", ImageFormat::png);
  auto bytes = read_file(dir / "full.png");
  bytes.resize(bytes.size() / 2);
  write_file(dir / "cut.png", bytes);
  CHECK_THROWS_AS(load_image(dir / "cut.png"), DecodeError);

  save_image(datakit::testing::gradient_image(32, 32), dir / "full.jpg", ImageFormat::jpeg, 90);
  auto jpg = read_file(dir / "full.jpg");
  jpg.resize(jpg.size() - 40);
  write_file(dir / "cut.jpg", jpg);
  CHECK_THROWS_AS(load_image(dir / "cut.jpg"), DecodeError);

  CHECK_THROWS_AS(load_image(dir / "missing.png"), IoError);
  const std::string text = "hello, not an image";
  write_file(dir / "x.png", std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  CHECK_THROWS_AS(load_image(dir / "x.png"), DecodeError);
}

TEST_CASE("alpha is composited over white") {
  TempDir dir;
  cv::Mat bgra(1, 3, CV_8UC4);
  bgra.at<cv::Vec4b>(0, 0) = {0, 0, 255, 0};    // fully transparent red
  bgra.at<cv::Vec4b>(0, 1) = {0, 0, 255, 255};  // opaque red
  bgra.at<cv::Vec4b>(0, 2) = {0, 0, 0, 128};    // half-transparent black
  cv::imwrite((dir / "alpha.png").string(), bgra);
  const auto img = load_image(dir / "alpha.png");
  CHECK(img.at(0, 0, 0) == 255);
  CHECK(img.at(0, 0, 1) == 255);
  CHECK(img.at(1, 0, 0) == 255);
  CHECK(img.at(1, 0, 1) == 0);
  CHECK(img.at(2, 0, 0) == 127);
}

TEST_CASE("PNG save/load is lossless on random images") {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto img = datakit::testing::noise_image(5 + static_cast<int>(seed), 3 + static_cast<int>(seed % 4), seed);
    save_image(img, dir / "r.png", ImageFormat::png);
    CHECK(load_image(dir / "r.png") == img);
  }
}

TEST_CASE("lossy save keeps dimensions and validates quality") {
  TempDir dir;
  const auto img = datakit::testing::noise_image(40, 24, 3);
  save_image(img, dir / "a.jpg", ImageFormat::jpeg, 95);
  const auto back = load_image(dir / "a.jpg");
  CHECK(back.same_shape(img));
  CHECK_FALSE(back == img);

  save_image(img, dir / "a.webp", ImageFormat::webp, 80);
  CHECK(load_image(dir / "a.webp").same_shape(img));

  CHECK_THROWS_AS(save_image(img, dir / "b.jpg", ImageFormat::jpeg, 200), RangeError);
  CHECK_THROWS_AS(save_image(img, dir / "b.png", ImageFormat::png, 90), RangeError);
  CHECK_THROWS_AS(save_image(img, dir / "nope" / "c.png", ImageFormat::png), IoError);
}

TEST_CASE("derive_stream is a pure function of the seed triple") {
  const SeedSpec s{42, 7, "noise"};
  auto a = derive_stream(s);
  auto b = derive_stream(s);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());

  CHECK(derive_stream({42, 0, "noise"})() != derive_stream({42, 1, "noise"})());
  CHECK(derive_stream({42, 0, "noise"})() != derive_stream({42, 0, "blur"})());
  CHECK(derive_stream({42, 0, "noise"})() != derive_stream({43, 0, "noise"})());
  // Label boundaries are length-prefixed.
  CHECK(derive_stream({1, 2, "ab"}).key() != derive_stream({1, 2, "a"}).key());
}

TEST_CASE("stream uniform draws have mean 0.5 and stay in range") {
  auto s = derive_stream({2024, 0, "uniformity"});
  double sum = 0.0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / kN == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(sum / kN - 0.5) < 0.01);

  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = s.uniform_int(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("manifest round-trips through line-delimited JSON") {
  TempDir dir;
  ManifestEntry e1;
  e1.source_path = "videos/ep01.mp4";
  e1.source_video_id = "ep01";
  e1.frame_index = 120;
  e1.picture_type = "I";
  e1.complexity_score = 0.7312;
  e1.scorer_id = "builtin-proxy";
  e1.output_path = "images/ep01_f000120.png";
  e1.rescaled_720p = true;
  ManifestEntry e2;
  e2.source_path = "b.png";
  e2.output_path = "lr/b.png";
  e2.extra_outputs = {"plans/b.json"};
  e2.plan_digest = "abc";
  e2.item_index = 3;
  e2.master_seed = 0xFFFFFFFFFFFFFFFFULL;
  ManifestEntry e3;
  e3.rejected = true;
  e3.reject_reason = "manual rejection";
  {
    ManifestWriter w(dir / "m.jsonl", {"curate", "libav test", {{"k", 10}}});
    w.append(e1);
    w.append(e2);
    w.append(e3);
    CHECK(w.entry_count() == 3);
  }
  const auto m = read_manifest(dir / "m.jsonl");
  CHECK(m.header.command == "curate");
  CHECK(m.header.tool_version == "libav test");
  CHECK(m.header.config["k"] == 10);
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0] == e1);
  CHECK(m.entries[1] == e2);
  CHECK(m.entries[2] == e3);
  CHECK(m.emitted_count() == 3);
  CHECK(m.rejected_count() == 1);
}

TEST_CASE("manifest writer serializes concurrent appends") {
  TempDir dir;
  {
    ManifestWriter w(dir / "m.jsonl", {"enhance", "v", {}});
    parallel_for(200, 8, [&](std::size_t i) {
      ManifestEntry e;
      e.output_path = "out/" + std::to_string(i) + ".png";
      w.append(e);
    });
    CHECK(w.entry_count() == 200);
  }
  const auto m = read_manifest(dir / "m.jsonl");
  std::set<std::string> paths;
  for (const auto& e : m.entries) paths.insert(e.output_path);
  CHECK(paths.size() == 200);
}

TEST_CASE("parallel_for visits every index once and propagates errors") {
  for (unsigned workers : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(500);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) REQUIRE(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 4, [](std::size_t i) {
                    if (i == 5) throw IoError("boom");
                  }),
                  IoError);
  parallel_for(0, 4, [](std::size_t) { FAIL("must not run"); });
}

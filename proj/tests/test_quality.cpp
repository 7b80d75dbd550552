#include <doctest.h>

#include <cmath>

#include "corvid/quality.hpp"
#include "corvid/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace corvid;
using namespace corvid::testing;

namespace {

FramePlane random_frame(std::uint64_t seed, int w, int h) {
  Rng rng(seed);
  FramePlane frame = FramePlane::allocate(w, h);
  for (auto& value : frame.luma) {
    value = static_cast<std::uint8_t>(rng.next_below(256));
  }
  return frame;
}

}  // namespace

TEST_CASE("identical frames have infinite PSNR") {
  auto frames = make_synthetic_clip(1, 64, 48, 1);
  CHECK(std::isinf(psnr(frames[0], frames[0])));
}

TEST_CASE("a uniform one-level difference scores 48.1308 dB") {
  FramePlane a = FramePlane::allocate(32, 32, 0, 100);
  FramePlane b = FramePlane::allocate(32, 32, 0, 101);
  // MSE = 1, so 20*log10(255) exactly.
  CHECK(std::abs(psnr(a, b) - 48.1308) < 1e-3);
  CHECK(psnr(a, b) == doctest::Approx(20.0 * std::log10(255.0)).epsilon(1e-12));
}

TEST_CASE("maximal error scores zero dB") {
  FramePlane a = FramePlane::allocate(16, 16, 0, 0);
  FramePlane b = FramePlane::allocate(16, 16, 0, 255);
  CHECK(psnr(a, b) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psnr is symmetric and matches the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FramePlane a = random_frame(seed, 40, 30);
    FramePlane b = random_frame(seed + 100, 40, 30);
    double forward = psnr(a, b);
    CHECK(forward == psnr(b, a));
    CHECK(forward == doctest::Approx(brute_psnr(a.luma, b.luma)).epsilon(1e-12));
  }
}

TEST_CASE("psnr rejects mismatched dimensions") {
  CHECK_THROWS_AS(
      static_cast<void>(psnr(FramePlane::allocate(16, 16),
                             FramePlane::allocate(16, 17))),
      Error);
}

TEST_CASE("ssim of identical frames is exactly one") {
  auto frames = make_synthetic_clip(2, 64, 48, 1);
  CHECK(ssim(frames[0], frames[0]) == 1.0);
  FramePlane realistic = random_frame(5, 32, 32);
  CHECK(ssim(realistic, realistic) == 1.0);
}

TEST_CASE("ssim matches the brute-force reference within 1e-6") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FramePlane a = random_frame(seed, 32, 32);
    FramePlane b = random_frame(seed + 999, 32, 32);
    double fast = ssim(a, b);
    double reference = brute_ssim(a.luma, b.luma, 32, 32);
    CHECK(fast == doctest::Approx(reference).epsilon(1e-6));
    CHECK(std::abs(fast - reference) < 1e-6);
  }
}

TEST_CASE("ssim against an inverted textured frame is low") {
  auto frames = make_synthetic_clip(3, 96, 96, 1);
  FramePlane inverted = frames[0];
  for (auto& value : inverted.luma) {
    value = static_cast<std::uint8_t>(255 - value);
  }
  double score = ssim(frames[0], inverted);
  CHECK(score < 0.2);
  CHECK(score == doctest::Approx(brute_ssim(frames[0].luma, inverted.luma, 96,
                                            96))
                     .epsilon(1e-6));
}

TEST_CASE("constant planes reduce to the closed-form luminance term") {
  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  for (auto [va, vb] : {std::pair<int, int>{50, 80}, {10, 200}, {128, 128}}) {
    FramePlane a = FramePlane::allocate(24, 24, 0, std::uint8_t(va));
    FramePlane b = FramePlane::allocate(24, 24, 0, std::uint8_t(vb));
    double mu_a = va, mu_b = vb;
    double expected = (2 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
    CHECK(ssim(a, b) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("ssim is symmetric") {
  FramePlane a = random_frame(7, 32, 32);
  FramePlane b = random_frame(8, 32, 32);
  CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
}

TEST_CASE("ssim needs at least the window size") {
  CHECK_THROWS_AS(static_cast<void>(ssim(FramePlane::allocate(10, 64),
                                         FramePlane::allocate(10, 64))),
                  Error);
  CHECK_NOTHROW(static_cast<void>(ssim(FramePlane::allocate(11, 11),
                                       FramePlane::allocate(11, 11))));
}

TEST_CASE("evaluate_clip separates finite and infinite frames") {
  auto frames = make_synthetic_clip(11, 48, 48, 3);
  std::vector<FramePlane> reference = frames;
  std::vector<FramePlane> recovered = frames;
  for (auto& value : recovered[1].luma) {
    value = static_cast<std::uint8_t>(value + 3);
  }
  QualityReport report = evaluate_clip("demo", recovered, reference);
  CHECK(report.infinite_psnr_frames == 2);
  REQUIRE(report.per_frame.size() == 3);
  CHECK(std::isinf(report.per_frame[0].psnr_db));
  CHECK(std::isfinite(report.per_frame[1].psnr_db));
  CHECK(report.psnr_mean == doctest::Approx(report.per_frame[1].psnr_db));
}

TEST_CASE("evaluating a directory against itself is perfect") {
  TempDir dir("eval_self");
  auto frames = make_synthetic_clip(12, 48, 48, 4);
  write_clip_yuv(dir.path() / "set", "clipA", frames);
  write_clip_yuv(dir.path() / "set", "clipB",
                 make_synthetic_clip(13, 48, 48, 4));

  SetReport report = evaluate_set((dir.path() / "set").string(),
                                  (dir.path() / "set").string());
  CHECK(report.clips.size() == 2);
  CHECK(report.frame_count == 8);
  CHECK(report.infinite_psnr_frames == 8);
  CHECK(std::isinf(report.psnr_mean));
  CHECK(report.ssim_mean == 1.0);

  std::string json = report.to_json_text();
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(json.find("\"psnr_mean\": \"inf\"") != std::string::npos);
}

TEST_CASE("a missing clip is an inventory mismatch naming it") {
  TempDir dir("eval_missing");
  auto frames = make_synthetic_clip(14, 48, 48, 2);
  write_clip_yuv(dir.path() / "ref", "clipA", frames);
  write_clip_yuv(dir.path() / "ref", "clipB", frames);
  write_clip_yuv(dir.path() / "rec", "clipA", frames);
  try {
    static_cast<void>(
        evaluate_set((dir.path() / "rec").string(), (dir.path() / "ref").string()));
    FAIL("expected InventoryMismatch");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::inventory_mismatch);
    CHECK(std::string(error.what()).find("clipB") != std::string::npos);
  }
}

TEST_CASE("frame-count differences are inventory mismatches") {
  TempDir dir("eval_frames");
  write_clip_yuv(dir.path() / "ref", "clipA", make_synthetic_clip(15, 48, 48, 4));
  write_clip_yuv(dir.path() / "rec", "clipA", make_synthetic_clip(15, 48, 48, 3));
  CHECK_THROWS_AS(static_cast<void>(evaluate_set((dir.path() / "rec").string(),
                                                 (dir.path() / "ref").string())),
                  Error);
}

TEST_CASE("adding a clip to both sets leaves other scores unchanged") {
  TempDir dir("eval_independence");
  auto clip_a = make_synthetic_clip(16, 48, 48, 3);
  auto damaged = clip_a;
  for (auto& value : damaged[0].luma) value = static_cast<std::uint8_t>(value + 9);
  write_clip_yuv(dir.path() / "ref", "clipA", clip_a);
  write_clip_yuv(dir.path() / "rec", "clipA", damaged);

  SetReport before = evaluate_set((dir.path() / "rec").string(),
                                  (dir.path() / "ref").string());

  auto clip_b = make_synthetic_clip(17, 48, 48, 3);
  write_clip_yuv(dir.path() / "ref", "clipB", clip_b);
  write_clip_yuv(dir.path() / "rec", "clipB", clip_b);
  SetReport after = evaluate_set((dir.path() / "rec").string(),
                                 (dir.path() / "ref").string());

  const QualityReport* clip_a_before = &before.clips[0];
  const QualityReport* clip_a_after = nullptr;
  for (const auto& clip : after.clips) {
    if (clip.clip_id == "clipA") clip_a_after = &clip;
  }
  REQUIRE(clip_a_after != nullptr);
  CHECK(clip_a_after->psnr_mean == clip_a_before->psnr_mean);
  CHECK(clip_a_after->ssim_mean == clip_a_before->ssim_mean);
}

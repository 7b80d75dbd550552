// Acceptance suite: every release criterion as one numbered test case,
// each finishing with a "ACCEPTANCE <n> PASS|FAIL <name>" line. The codec
// fixture corpus is built once and shared.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "corvid/analytics.hpp"
#include "corvid/annexb.hpp"
#include "corvid/codec_io.hpp"
#include "corvid/corrupt.hpp"
#include "corvid/mask.hpp"
#include "corvid/pipeline.hpp"
#include "corvid/quality.hpp"
#include "corvid/recover.hpp"
#include "corvid/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace corvid;
using namespace corvid::testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, bool passed, const char* name) {
  std::printf("ACCEPTANCE %d %s %s\n", criterion, passed ? "PASS" : "FAIL",
              name);
  std::fflush(stdout);
  CHECK_MESSAGE(passed, "criterion ", criterion, ": ", name);
}

constexpr int kClipCount = 8;       // branch corpus
constexpr int kExtraClips = 2;      // parser corpus is >= 10 encoded clips
constexpr int kClipFrames = 64;
constexpr int kClipW = 320;
constexpr int kClipH = 240;
constexpr std::uint64_t kSeed = 20260809;

// The seven corruption settings exercised throughout.
const std::vector<CorruptionParams>& seven_settings() {
  static const std::vector<CorruptionParams> settings = [] {
    std::vector<CorruptionParams> list;
    auto add = [&](std::uint32_t m, double loc, std::uint32_t size) {
      CorruptionParams params;
      params.p_num = m;
      params.p_den = 16;
      params.location = loc;
      params.frag_size = size;
      list.push_back(params);
    };
    add(1, 0.4, 2048);
    add(1, 0.4, 8192);
    add(1, 0.4, 4096);
    add(1, 0.2, 4096);
    add(1, 0.8, 4096);
    add(2, 0.4, 4096);
    add(4, 0.4, 4096);
    return list;
  }();
  return settings;
}

struct Corpus {
  TempDir dir{"acceptance"};
  fs::path sources;                      // kClipCount clips for branches
  std::vector<std::string> clip_ids;
  std::vector<fs::path> encoded;         // kClipCount + kExtraClips streams
  CodecProfile profile;
  fs::path matrix_root;
  std::vector<BranchManifest> manifests;  // m = 1, 2, 4 at (0.4, 4096)
  std::vector<fs::path> branch_dirs;
  double matrix_seconds = 0.0;
  // Aggressive mini-branch for the identity-baseline quality level.
  fs::path harsh_dir;
  BranchManifest harsh_manifest;

  Corpus() {
    profile = require_codec_profile();
    sources = dir.path() / "src";
    clip_ids = make_fixture_corpus(sources, kClipCount, kClipW, kClipH,
                                   kClipFrames, kSeed);

    // Encode the branch corpus once for the parser/corruption criteria.
    fs::path encodes = dir.path() / "encoded";
    fs::create_directories(encodes);
    for (const std::string& clip_id : clip_ids) {
      fs::path input = sources / (clip_id + "_" + std::to_string(kClipW) + "x" +
                                  std::to_string(kClipH) + ".yuv");
      fs::path out = encodes / (clip_id + ".264");
      encode(input.string(), profile, out.string());
      encoded.push_back(out);
    }
    // Two extra clips round the parser corpus up to 10.
    for (int i = 0; i < kExtraClips; ++i) {
      std::string clip_id = "extra" + std::to_string(i);
      auto frames = make_synthetic_clip(kSeed + 9000 + i, kClipW, kClipH, 48);
      std::string input = write_clip_yuv(dir.path() / "extra_src", clip_id, frames);
      fs::path out = encodes / (clip_id + ".264");
      encode(input, profile, out.string());
      encoded.push_back(out);
    }

    // The m in {1,2,4} matrix at (0.4, 4096), timed for criterion 6.
    matrix_root = dir.path() / "matrix";
    std::vector<BranchSpec> specs;
    for (std::uint32_t m : {1u, 2u, 4u}) {
      BranchSpec spec;
      spec.source_dir = sources.string();
      spec.params.p_num = m;
      spec.params.p_den = 16;
      spec.params.location = 0.4;
      spec.params.frag_size = 4096;
      spec.params.seed = kSeed;
      spec.profile = profile;
      spec.out_dir = (matrix_root / branch_dir_name(spec.params)).string();
      branch_dirs.push_back(spec.out_dir);
      specs.push_back(std::move(spec));
    }
    auto start = Clock::now();
    manifests = branch_matrix(specs);
    matrix_seconds = seconds_since(start);
    std::printf("[corpus] matrix build: %.1f s for 3 branches x %d clips\n",
                matrix_seconds, kClipCount);

    BranchSpec harsh;
    harsh.source_dir = sources.string();
    harsh.params.p_num = 4;
    harsh.params.p_den = 16;
    harsh.params.location = 0.2;
    harsh.params.frag_size = 8192;
    harsh.params.seed = kSeed + 1;
    harsh.profile = profile;
    harsh_dir = dir.path() / "harsh";
    harsh.out_dir = harsh_dir.string();
    harsh_manifest = build_branch(harsh);
  }

  BranchStats stats_of(std::size_t branch) const {
    std::ifstream in(branch_dirs[branch] / "stats.json");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return BranchStats::from_json_text(text);
  }
};

Corpus& corpus() {
  static Corpus instance;
  return instance;
}

}  // namespace

TEST_CASE("criterion 1: parser round-trip over encodes and fuzz") {
  const Corpus& fixtures = corpus();  // corpus build stays outside the timer
  REQUIRE(fixtures.encoded.size() >= 10);
  auto start = Clock::now();
  bool ok = true;
  Bitstream sample;
  for (const fs::path& path : corpus().encoded) {
    Bitstream stream = load_bitstream(path.string());
    auto nalus = scan_nalus(stream);
    if (serialize_nalus(nalus, stream) != stream.bytes) ok = false;
    if (sample.bytes.empty()) sample = stream;
  }

  Rng rng(kSeed);
  int parsed_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Bitstream fuzz;
    int flavor = trial % 3;
    if (flavor == 0) {
      // Raw random bytes, start-code-heavy alphabet.
      std::size_t length = rng.next_below(2000);
      for (std::size_t i = 0; i < length; ++i) {
        fuzz.bytes.push_back(static_cast<std::uint8_t>(
            rng.next_below(4) == 0 ? rng.next_below(256) : rng.next_below(3)));
      }
    } else if (flavor == 1) {
      // Valid start code, then noise.
      fuzz.bytes = {0, 0, 0, 1};
      std::size_t length = rng.next_below(1500);
      for (std::size_t i = 0; i < length; ++i) {
        fuzz.bytes.push_back(static_cast<std::uint8_t>(rng.next_below(256)));
      }
    } else {
      // Mutated slice of a real encode.
      std::size_t length = std::min<std::size_t>(
          sample.bytes.size(), 500 + rng.next_below(4000));
      fuzz.bytes.assign(sample.bytes.begin(),
                        sample.bytes.begin() + static_cast<long>(length));
      for (int hits = 0; hits < 20; ++hits) {
        if (fuzz.bytes.empty()) break;
        fuzz.bytes[rng.next_below(fuzz.bytes.size())] =
            static_cast<std::uint8_t>(rng.next_below(256));
      }
    }
    try {
      auto nalus = scan_nalus(fuzz);
      ++parsed_count;
      if (serialize_nalus(nalus, fuzz) != fuzz.bytes) ok = false;
    } catch (const Error&) {
      // structured rejection; never an abort
    }
  }
  double elapsed = seconds_since(start);
  std::printf("[c1] %zu encodes round-tripped, %d/1000 fuzz inputs parsed, "
              "%.2f s\n",
              corpus().encoded.size(), parsed_count, elapsed);
  if (elapsed >= 10.0) ok = false;
  if (parsed_count == 0) ok = false;
  report(1, ok, "parser round-trip (10+ clips, 1000 fuzz strings, <10s)");
}

TEST_CASE("criterion 2: corruption safety and byte accounting, 200 runs") {
  auto start = Clock::now();
  bool ok = true;

  // Pre-parse each clip once.
  std::vector<Bitstream> streams;
  std::vector<std::vector<NaluSpan>> spans;
  for (std::size_t i = 0; i < std::size_t(kClipCount); ++i) {
    streams.push_back(load_bitstream(corpus().encoded[i].string()));
    spans.push_back(scan_nalus(streams.back()));
  }

  for (int run = 0; run < 200; ++run) {
    CorruptionParams params = seven_settings()[run % 7];
    params.seed = kSeed + std::uint64_t(run) * 31;
    std::size_t clip = std::size_t(run) % streams.size();

    CorruptionResult result = apply_corruption(streams[clip], params);
    std::size_t removed = 0;
    for (const CorruptionRecord& record : result.log.records) {
      removed += record.removed_len;
      const NaluSpan& span = spans[clip][record.nalu_index];
      if (!span.is_vcl() || record.removed_offset < span.payload_offset ||
          record.removed_offset + record.removed_len > span.payload_end() ||
          record.removed_len == 0) {
        ok = false;
      }
    }
    if (result.log.original_len - result.log.corrupted_len != removed) {
      ok = false;
    }
    if (result.stream.bytes.size() != result.log.corrupted_len) ok = false;
  }
  double elapsed = seconds_since(start);
  std::printf("[c2] 200 seeded runs across 7 settings, %.2f s\n", elapsed);
  if (elapsed >= 30.0) ok = false;
  report(2, ok, "corruption safety and accounting (200 runs, <30s)");
}

TEST_CASE("criterion 3: build_branch determinism") {
  bool ok = true;
  TempDir dir("det");
  fs::path sources = dir.path() / "src";
  make_fixture_corpus(sources, 3, 160, 128, 32, kSeed + 777);

  auto build = [&](const fs::path& out) {
    BranchSpec spec;
    spec.source_dir = sources.string();
    spec.out_dir = out.string();
    spec.params.seed = 5150;
    spec.profile = corpus().profile;
    return build_branch(spec);
  };
  BranchManifest first = build(dir.path() / "a");
  BranchManifest second = build(dir.path() / "b");

  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  REQUIRE(first.clips.size() == second.clips.size());
  for (std::size_t i = 0; i < first.clips.size(); ++i) {
    const ClipEntry& a = first.clips[i];
    const ClipEntry& b = second.clips[i];
    if (slurp(dir.path() / "a" / a.corrupted_bitstream) !=
        slurp(dir.path() / "b" / b.corrupted_bitstream)) {
      ok = false;
    }
    if (slurp(dir.path() / "a" / a.corruption_log) !=
        slurp(dir.path() / "b" / b.corruption_log)) {
      ok = false;
    }
    for (std::size_t f = 0; f < a.frame_count; ++f) {
      char name[32];
      std::snprintf(name, sizeof(name), "%05zu.png", f);
      if (slurp(dir.path() / "a" / a.mask_dir / name) !=
          slurp(dir.path() / "b" / b.mask_dir / name)) {
        ok = false;
      }
    }
  }
  report(3, ok, "identical spec+seed rebuilds byte-identical artifacts");
}

TEST_CASE("criterion 4: payload dominance on encoder fixtures") {
  bool ok = true;
  double worst = 1.0;
  for (const fs::path& path : corpus().encoded) {
    Bitstream stream = load_bitstream(path.string());
    double fraction = payload_fraction(scan_nalus(stream));
    worst = std::min(worst, fraction);
    if (fraction <= 0.99) ok = false;
  }
  std::printf("[c4] minimum payload fraction over %zu encodes: %.5f\n",
              corpus().encoded.size(), worst);
  report(4, ok, "VCL payload fraction > 0.99 on all encodes");
}

TEST_CASE("criterion 5: corrupted-frame fraction lands in the band") {
  BranchStats stats = corpus().stats_of(0);  // (1/16, 0.4, 4096)
  std::printf("[c5] (1/16,0.4,4096): corrupted_frame_fraction=%.4f over %zu "
              "frames (selection rate 6.25%%)\n",
              stats.corrupted_frame_fraction, stats.frame_count);
  bool ok = stats.frame_count >= std::size_t(kClipCount) * kClipFrames &&
            stats.corrupted_frame_fraction >= 0.15 &&
            stats.corrupted_frame_fraction <= 0.50;
  report(5, ok, "corrupted_frame_fraction in [0.15, 0.50] at (1/16,0.4,4096)");
}

TEST_CASE("criterion 6: corruption grows with m and the matrix is timely") {
  BranchStats m1 = corpus().stats_of(0);
  BranchStats m2 = corpus().stats_of(1);
  BranchStats m4 = corpus().stats_of(2);
  std::printf("[c6] mean area ratio m=1: %.4f, m=2: %.4f, m=4: %.4f; "
              "matrix %.1f s\n",
              m1.mean_ratio, m2.mean_ratio, m4.mean_ratio,
              corpus().matrix_seconds);
  bool ok = m1.mean_ratio <= m2.mean_ratio && m2.mean_ratio <= m4.mean_ratio &&
            corpus().matrix_seconds < 600.0;

  // The emitted comparison report must agree.
  std::ifstream in(corpus().matrix_root / "comparison.json");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (text.find("\"mean_ratio_non_decreasing\": true") == std::string::npos) {
    ok = false;
  }
  report(6, ok, "mean corrupted-area ratio non-decreasing over m in {1,2,4}");
}

TEST_CASE("criterion 7: mask fidelity against known regions and brute force") {
  bool ok = true;
  MaskParams params;

  // 50 pairs with known rectangles; IoU >= 0.9 each.
  Rng rng(kSeed + 4);
  for (int pair = 0; pair < 50; ++pair) {
    int w = 200 + int(rng.next_below(200));
    int h = 150 + int(rng.next_below(150));
    auto frames = make_synthetic_clip(kSeed + 100 + pair, w, h, 1);
    FramePlane corrupted = frames[0];
    int rect_w = 40 + int(rng.next_below(80));
    int rect_h = 40 + int(rng.next_below(60));
    int x0 = int(rng.next_below(std::size_t(w - rect_w)));
    int y0 = int(rng.next_below(std::size_t(h - rect_h)));
    for (int y = y0; y < y0 + rect_h; ++y) {
      for (int x = x0; x < x0 + rect_w; ++x) {
        auto& value = corrupted.luma[std::size_t(y) * w + x];
        value = static_cast<std::uint8_t>(value + 128);
      }
    }
    // Plus isolated single-pixel noise that must vanish.
    for (int noise = 0; noise < 10; ++noise) {
      int x = int(rng.next_below(std::size_t(w)));
      int y = int(rng.next_below(std::size_t(h)));
      if (x >= x0 - 4 && x < x0 + rect_w + 4 && y >= y0 - 4 &&
          y < y0 + rect_h + 4) {
        continue;
      }
      corrupted.luma[std::size_t(y) * w + x] = static_cast<std::uint8_t>(
          frames[0].luma[std::size_t(y) * w + x] + 128);
    }

    ErrorMask mask = make_mask(frames[0], corrupted, params);
    std::size_t inter = 0, uni = 0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        bool truth = x >= x0 && x < x0 + rect_w && y >= y0 && y < y0 + rect_h;
        bool predicted = mask.bits[std::size_t(y) * w + x] != 0;
        if (truth && predicted) ++inter;
        if (truth || predicted) ++uni;
      }
    }
    double iou = uni == 0 ? 0.0 : double(inter) / double(uni);
    if (iou < 0.9) {
      std::printf("[c7] pair %d IoU %.3f\n", pair, iou);
      ok = false;
    }
  }

  // Isolated pixel cleanup, direct.
  GrayPlane lone{64, 64, std::vector<std::uint8_t>(64 * 64, 0)};
  lone.values[40 * 64 + 9] = 255;
  if (binarize_and_clean(lone, params).area_ratio != 0.0) ok = false;

  // Morphology equals brute force on 100 random 64x64 planes.
  for (int trial = 0; trial < 100; ++trial) {
    Rng plane_rng(kSeed + 900 + trial);
    BinaryPlane plane{64, 64, std::vector<std::uint8_t>(64 * 64)};
    for (auto& bit : plane.bits) {
      bit = plane_rng.next_double() < 0.45 ? 1 : 0;
    }
    for (int radius : {1, 2}) {
      if (erode(plane, radius).bits != brute_erode(plane, radius).bits ||
          dilate(plane, radius).bits != brute_dilate(plane, radius).bits) {
        ok = false;
      }
    }
  }
  report(7, ok, "mask IoU >= 0.9, pixel noise removed, morphology exact");
}

TEST_CASE("criterion 8: metric oracles and the identity-baseline level") {
  bool ok = true;

  FramePlane a = FramePlane::allocate(64, 64, 0, 100);
  FramePlane b = FramePlane::allocate(64, 64, 0, 101);
  if (std::abs(psnr(a, b) - 48.1308) > 1e-3) ok = false;

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto frames = make_synthetic_clip(seed, 48, 48, 1);
    if (ssim(frames[0], frames[0]) != 1.0) ok = false;
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed * 13 + 1);
    FramePlane x = FramePlane::allocate(32, 32);
    FramePlane y = FramePlane::allocate(32, 32);
    for (auto& value : x.luma) value = std::uint8_t(rng.next_below(256));
    for (auto& value : y.luma) value = std::uint8_t(rng.next_below(256));
    if (std::abs(ssim(x, y) - brute_ssim(x.luma, y.luma, 32, 32)) > 1e-6) {
      ok = false;
    }
  }

  // Identity baseline on the aggressive mini-branch: set PSNR stays low.
  const fs::path& branch = corpus().harsh_dir;  // (4/16, 0.2, 8192)
  const BranchManifest& manifest = corpus().harsh_manifest;
  TempDir eval_dir("eval");
  fs::create_directories(eval_dir.path() / "rec");
  fs::create_directories(eval_dir.path() / "ref");
  for (const ClipEntry& clip : manifest.clips) {
    std::string name = clip.clip_id + "_" + std::to_string(clip.width) + "x" +
                       std::to_string(clip.height) + ".yuv";
    fs::copy_file(branch / clip.corr_frames, eval_dir.path() / "rec" / name);
    fs::copy_file(branch / clip.orig_frames, eval_dir.path() / "ref" / name);
  }
  SetReport set = evaluate_set((eval_dir.path() / "rec").string(),
                               (eval_dir.path() / "ref").string());
  std::printf("[c8] identity-baseline set PSNR %.2f dB (%zu identical frames "
              "excluded), SSIM %.4f\n",
              set.psnr_mean, set.infinite_psnr_frames, set.ssim_mean);
  if (!(set.psnr_mean < 25.0)) ok = false;
  report(8, ok, "PSNR/SSIM oracles hold; identity baseline set PSNR < 25 dB");
}

TEST_CASE("criterion 9: baseline exactness and mask discipline") {
  bool ok = true;

  // Static scene with one damaged frame: temporal copy restores it exactly.
  auto base = make_synthetic_clip(kSeed + 5, 96, 64, 1)[0];
  RecoveryInput input;
  input.clip_id = "static";
  for (int t = 0; t < 7; ++t) {
    FramePlane frame = base;
    frame.frame_index = t;
    input.frames.push_back(std::move(frame));
    input.masks.push_back(ErrorMask::from_plane(
        {96, 64, std::vector<std::uint8_t>(96 * 64, 0)}));
  }
  Rng rng(kSeed + 6);
  BinaryPlane damage{96, 64, std::vector<std::uint8_t>(96 * 64, 0)};
  for (int y = 12; y < 44; ++y) {
    for (int x = 20; x < 70; ++x) {
      input.frames[3].luma[std::size_t(y) * 96 + x] =
          std::uint8_t(rng.next_below(256));
      damage.bits[std::size_t(y) * 96 + x] = 1;
    }
  }
  input.masks[3] = ErrorMask::from_plane(std::move(damage));

  auto recovered = recover_temporal(input);
  for (std::size_t i = 0; i < base.luma.size(); ++i) {
    if (input.masks[3].bits[i] && recovered[3].luma[i] != base.luma[i]) {
      ok = false;
    }
  }

  // Unmasked pixels byte-identical across 100 random inputs, all methods.
  for (int trial = 0; trial < 100; ++trial) {
    Rng trial_rng(kSeed + 7000 + trial);
    RecoveryInput random_input;
    random_input.clip_id = "r";
    int frames = 2 + int(trial_rng.next_below(2));
    for (int t = 0; t < frames; ++t) {
      FramePlane frame = FramePlane::allocate(32, 24);
      for (auto& value : frame.luma) value = std::uint8_t(trial_rng.next_below(256));
      for (auto& value : frame.chroma_u) value = std::uint8_t(trial_rng.next_below(256));
      for (auto& value : frame.chroma_v) value = std::uint8_t(trial_rng.next_below(256));
      random_input.frames.push_back(std::move(frame));
      BinaryPlane mask{32, 24, std::vector<std::uint8_t>(32 * 24)};
      for (auto& bit : mask.bits) bit = trial_rng.next_below(5) == 0 ? 1 : 0;
      random_input.masks.push_back(ErrorMask::from_plane(std::move(mask)));
    }

    for (int method = 0; method < 3; ++method) {
      std::vector<FramePlane> output =
          method == 0   ? recover_identity(random_input)
          : method == 1 ? recover_temporal(random_input)
                        : recover_spatial(random_input, 30);
      for (std::size_t t = 0; t < output.size(); ++t) {
        const auto& mask = random_input.masks[t];
        for (std::size_t i = 0; i < mask.bits.size(); ++i) {
          if (!mask.bits[i] &&
              output[t].luma[i] != random_input.frames[t].luma[i]) {
            ok = false;
          }
        }
      }
    }
  }
  report(9, ok, "temporal copy exact on static scene; unmasked bytes kept");
}

TEST_CASE("criterion 10: end-to-end verify catches induced faults") {
  bool ok = true;

  // Fresh branch passes wholesale.
  const fs::path manifest_path =
      corpus().branch_dirs[0] / "manifest.json";
  VerificationReport clean = verify_branch(manifest_path.string());
  if (!clean.all_passed()) {
    std::printf("[c10] clean branch failed:\n%s", clean.to_text().c_str());
    ok = false;
  }

  const BranchManifest& manifest = corpus().manifests[0];
  REQUIRE(manifest.clips.size() >= 2);

  // Fault 1: truncate one corrupted bitstream.
  {
    TempDir scratch("verify_trunc");
    fs::copy(corpus().branch_dirs[0], scratch.path() / "branch",
             fs::copy_options::recursive);
    const ClipEntry& victim = manifest.clips[0];
    fs::path target = scratch.path() / "branch" / victim.corrupted_bitstream;
    auto size = fs::file_size(target);
    fs::resize_file(target, size - 64);

    VerificationReport report =
        verify_branch((scratch.path() / "branch" / "manifest.json").string());
    bool victim_failed = false, others_clean = true;
    for (const CheckResult& check : report.checks) {
      if (check.check != "byte_accounting") continue;
      if (check.clip_id == victim.clip_id) {
        victim_failed = !check.passed;
      } else if (!check.passed) {
        others_clean = false;
      }
    }
    if (!victim_failed || !others_clean) ok = false;
  }

  // Fault 2: delete one mask; the parity check must name clip and frame.
  {
    TempDir scratch("verify_mask");
    fs::copy(corpus().branch_dirs[0], scratch.path() / "branch",
             fs::copy_options::recursive);
    const ClipEntry& victim = manifest.clips[1];
    fs::remove(scratch.path() / "branch" / victim.mask_dir / "00011.png");

    VerificationReport report =
        verify_branch((scratch.path() / "branch" / "manifest.json").string());
    bool named = false;
    for (const CheckResult& check : report.checks) {
      if (check.check == "mask_parity" && check.clip_id == victim.clip_id) {
        if (!check.passed && check.detail.find("11") != std::string::npos) {
          named = true;
        }
      }
      if (check.check == "mask_parity" && check.clip_id != victim.clip_id &&
          !check.passed) {
        ok = false;
      }
    }
    if (!named) ok = false;
  }
  report(10, ok, "verify passes fresh and localizes induced faults");
}

/*
 * Copyright 2026 The Corvid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// corvid: corrupted-video dataset toolchain.
//
// Exit codes: 0 success, 1 partial failure, 2 total failure,
// 3 environment error (codec tooling unavailable).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corvid/analytics.hpp"
#include "corvid/annexb.hpp"
#include "corvid/codec_io.hpp"
#include "corvid/corrupt.hpp"
#include "corvid/mask.hpp"
#include "corvid/pipeline.hpp"
#include "corvid/quality.hpp"
#include "corvid/recover.hpp"

namespace fs = std::filesystem;
using namespace corvid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitTotal = 2;
constexpr int kExitEnvironment = 3;

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case Errc::encoder_unavailable:
    case Errc::decoder_unavailable:
      return kExitEnvironment;
    default:
      return kExitTotal;
  }
}

bool parse_p(const std::string& text, CorruptionParams& params) {
  unsigned m = 0, l = 0;
  if (std::sscanf(text.c_str(), "%u/%u", &m, &l) != 2) return false;
  params.p_num = m;
  params.p_den = l;
  return true;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CodecProfile load_profile(const std::string& config_path) {
  if (!config_path.empty()) {
    return CodecProfile::from_json_text(read_text_file(config_path));
  }
  std::string tool = find_codec_tool();
  if (tool.empty()) {
    raise(Errc::encoder_unavailable,
          "corvid-codec not found; set CORVID_CODEC_TOOL or pass --config "
          "with explicit codec commands");
  }
  return CodecProfile::defaults(tool);
}

int cmd_inspect(const std::string& in_path, const std::string& json_path) {
  Bitstream stream = load_bitstream(in_path);
  std::vector<NaluSpan> nalus = scan_nalus(stream);

  std::size_t counts[7] = {};
  for (const NaluSpan& span : nalus) {
    counts[static_cast<int>(span.kind)] += 1;
  }
  std::printf("%s: %zu bytes, %zu NALUs\n", in_path.c_str(),
              stream.bytes.size(), nalus.size());
  const NaluKind kinds[] = {NaluKind::Sps,      NaluKind::Pps,
                            NaluKind::SliceIdr, NaluKind::SliceNonIdr,
                            NaluKind::Sei,      NaluKind::Aud,
                            NaluKind::Other};
  for (NaluKind kind : kinds) {
    std::size_t count = counts[static_cast<int>(kind)];
    if (count > 0) std::printf("  %-12s %zu\n", nalu_kind_name(kind), count);
  }
  std::printf("  payload fraction: %.6f\n", payload_fraction(nalus));

  try {
    GopIndex gops = build_gop_index(nalus);
    std::printf("  frames: %zu, GOPs: %zu (", gops.frame_count(),
                gops.gops.size());
    for (std::size_t g = 0; g < gops.gops.size(); ++g) {
      std::printf("%s%zu", g ? " " : "", gops.gops[g].frame_nalus.size());
    }
    std::printf(")\n");
  } catch (const Error& error) {
    std::printf("  GOP index unavailable: %s\n", error.what());
  }

  std::size_t continuations = count_slice_continuations(stream, nalus);
  if (continuations > 0) {
    std::printf(
        "  warning: %zu slice(s) continue a frame (multi-slice access "
        "units); frame indexing treats every VCL NALU as one frame\n",
        continuations);
  }

  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::trunc);
    out << nalu_index_json(nalus) << "\n";
    if (!out) raise(Errc::io_error, "cannot write " + json_path);
  }
  return kExitOk;
}

int cmd_corrupt(const std::string& in_path, const std::string& out_path,
                const std::string& log_path, const CorruptionParams& params,
                bool allow_passthrough) {
  Bitstream stream = load_bitstream(in_path);
  CorruptionResult result = apply_corruption(stream, params, allow_passthrough);
  save_bitstream(result.stream, out_path);
  if (!log_path.empty()) {
    std::ofstream out(log_path, std::ios::trunc);
    out << log_to_json(result.log) << "\n";
    if (!out) raise(Errc::io_error, "cannot write " + log_path);
  }
  std::printf("%s: removed %zu fragment(s), %zu -> %zu bytes\n",
              out_path.c_str(), result.log.records.size(),
              result.log.original_len, result.log.corrupted_len);
  return kExitOk;
}

int cmd_decode(const std::string& in_path, const std::string& out_path,
               const std::string& config) {
  CodecProfile profile = load_profile(config);
  std::vector<FramePlane> frames =
      decode_to_file(in_path, profile, out_path);
  std::printf("decoded %zu frames to %s\n", frames.size(), out_path.c_str());
  return kExitOk;
}

int cmd_mask(const std::string& orig_path, const std::string& corr_path,
             const std::string& out_dir, const MaskParams& params) {
  auto orig_dims = dims_from_filename(orig_path);
  auto corr_dims = dims_from_filename(corr_path);
  if (!orig_dims || !corr_dims) {
    raise(Errc::bad_config, "inputs must follow the <stem>_<W>x<H>.yuv naming");
  }
  auto originals = read_yuv(orig_path, orig_dims->first, orig_dims->second);
  auto corrupted = read_yuv(corr_path, corr_dims->first, corr_dims->second);
  auto pairs = align_frames(std::move(originals), std::move(corrupted));
  auto masks = mask_sequence(pairs, params);
  fs::create_directories(out_dir);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%05zu.png", i);
    write_mask_png((fs::path(out_dir) / name).string(), masks[i]);
    ratios.push_back(masks[i].area_ratio);
  }
  write_ratios_csv((fs::path(out_dir) / "ratios.csv").string(), ratios);
  std::printf("wrote %zu masks to %s\n", masks.size(), out_dir.c_str());
  return kExitOk;
}

int cmd_stats(const std::string& branch_dir) {
  fs::path manifest_path = fs::path(branch_dir) / "manifest.json";
  if (!fs::exists(manifest_path)) {
    raise(Errc::manifest_missing, manifest_path.string());
  }
  BranchManifest manifest =
      BranchManifest::from_json_text(read_text_file(manifest_path.string()));

  std::vector<ClipRatios> clips;
  for (const ClipEntry& clip : manifest.clips) {
    clips.push_back(
        {clip.clip_id,
         read_ratios_csv((fs::path(branch_dir) / clip.ratios_csv).string())});
  }
  BranchStats stats = aggregate_ratios(clips);
  std::ofstream out(fs::path(branch_dir) / manifest.stats_path,
                    std::ios::trunc);
  out << stats.to_json_text() << "\n";
  if (!out) raise(Errc::io_error, "cannot write stats.json");

  std::printf("%s: %zu frames, corrupted fraction %.4f, mean ratio %.4f\n",
              manifest.branch_id.c_str(), stats.frame_count,
              stats.corrupted_frame_fraction, stats.mean_ratio);
  std::printf("  levels: unc=%zu min=%zu mod=%zu sev=%zu\n",
              stats.level_histogram[0], stats.level_histogram[1],
              stats.level_histogram[2], stats.level_histogram[3]);
  return kExitOk;
}

int cmd_branch(BranchSpec spec) {
  BranchManifest manifest = build_branch(spec);
  std::printf("branch %s: %zu clip(s) built, %zu failed -> %s\n",
              manifest.branch_id.c_str(), manifest.clips.size(),
              manifest.failures.size(), spec.out_dir.c_str());
  for (const ClipFailure& failure : manifest.failures) {
    std::fprintf(stderr, "  failed %s: %s\n", failure.clip_id.c_str(),
                 failure.error.c_str());
  }
  return manifest.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_matrix(const std::string& spec_path, const std::string& config,
               int jobs, bool resume) {
  nlohmann::json doc = nlohmann::json::parse(read_text_file(spec_path));
  CodecProfile profile = load_profile(config);

  std::string source_dir = doc.at("source_dir").get<std::string>();
  std::string out_root = doc.at("out_root").get<std::string>();
  std::uint64_t seed = doc.value("seed", 0ULL);

  MaskParams mask_params;
  if (doc.contains("mask_params")) {
    const auto& mp = doc["mask_params"];
    mask_params.threshold = mp.value("threshold", mask_params.threshold);
    mask_params.open_radius = mp.value("open_radius", mask_params.open_radius);
    mask_params.close_radius =
        mp.value("close_radius", mask_params.close_radius);
    mask_params.min_component_area =
        mp.value("min_component_area", mask_params.min_component_area);
    mask_params.include_chroma =
        mp.value("include_chroma", mask_params.include_chroma);
  }

  std::vector<BranchSpec> specs;
  for (const auto& branch : doc.at("branches")) {
    BranchSpec spec;
    spec.source_dir = source_dir;
    spec.profile = profile;
    spec.mask_params = mask_params;
    spec.parallelism = jobs;
    spec.resume = resume;
    if (!parse_p(branch.at("p").get<std::string>(), spec.params)) {
      raise(Errc::bad_config, "bad p in matrix spec");
    }
    spec.params.location = branch.at("loc").get<double>();
    spec.params.frag_size = branch.at("size").get<std::uint32_t>();
    spec.params.seed = seed;
    spec.params.idr_eligible = !branch.value("exclude_idr", false);
    spec.out_dir =
        (fs::path(out_root) / branch_dir_name(spec.params)).string();
    specs.push_back(std::move(spec));
  }

  std::vector<BranchManifest> manifests = branch_matrix(specs);
  std::size_t failures = 0;
  for (const BranchManifest& manifest : manifests) {
    failures += manifest.failures.size();
    std::printf("built %s (%zu clips, %zu failures)\n",
                manifest.branch_id.c_str(), manifest.clips.size(),
                manifest.failures.size());
  }
  std::printf("comparison written to %s/comparison.json\n", out_root.c_str());
  return failures == 0 ? kExitOk : kExitPartial;
}

int cmd_verify(const std::string& manifest_path) {
  VerificationReport report = verify_branch(manifest_path);
  std::fputs(report.to_text().c_str(), stdout);
  std::size_t failed = 0;
  for (const CheckResult& check : report.checks) {
    if (!check.passed) ++failed;
  }
  if (failed == 0) return kExitOk;
  return failed == report.checks.size() ? kExitTotal : kExitPartial;
}

int cmd_eval(const std::string& rec_dir, const std::string& ref_dir,
             const std::string& out_path) {
  SetReport report = evaluate_set(rec_dir, ref_dir);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    out << report.to_json_text() << "\n";
    if (!out) raise(Errc::io_error, "cannot write " + out_path);
  }
  std::printf("clips: %zu, frames: %zu\n", report.clips.size(),
              report.frame_count);
  if (std::isinf(report.psnr_mean)) {
    std::printf("set PSNR: inf (all frames identical)\n");
  } else {
    std::printf("set PSNR: %.4f dB (%zu identical frame(s) excluded)\n",
                report.psnr_mean, report.infinite_psnr_frames);
  }
  std::printf("set SSIM: %.6f\n", report.ssim_mean);
  return kExitOk;
}

int cmd_recover(const std::string& method, const std::string& branch_dir,
                const std::string& out_dir) {
  fs::path manifest_path = fs::path(branch_dir) / "manifest.json";
  if (!fs::exists(manifest_path)) {
    raise(Errc::manifest_missing, manifest_path.string());
  }
  BranchManifest manifest =
      BranchManifest::from_json_text(read_text_file(manifest_path.string()));
  fs::create_directories(out_dir);

  for (const ClipEntry& clip : manifest.clips) {
    RecoveryInput input;
    input.clip_id = clip.clip_id;
    input.frames = read_yuv((fs::path(branch_dir) / clip.corr_frames).string(),
                            clip.width, clip.height);
    for (std::size_t i = 0; i < clip.frame_count; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%05zu.png", i);
      input.masks.push_back(read_mask_png(
          (fs::path(branch_dir) / clip.mask_dir / name).string()));
    }

    std::vector<FramePlane> recovered;
    if (method == "identity") {
      recovered = recover_identity(input);
    } else if (method == "temporal") {
      recovered = recover_temporal(input);
    } else if (method == "spatial") {
      recovered = recover_spatial(input);
    } else {
      raise(Errc::bad_config, "unknown method " + method);
    }

    std::string out_name = clip.clip_id + "_" + std::to_string(clip.width) +
                           "x" + std::to_string(clip.height) + ".yuv";
    write_yuv((fs::path(out_dir) / out_name).string(), recovered);
    std::printf("recovered %s (%zu frames, %s)\n", clip.clip_id.c_str(),
                recovered.size(), method.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corvid: corrupted-video dataset toolchain"};
  app.require_subcommand(1);

  std::string config, in_path, out_path, log_path, json_path;
  std::string source_dir, branch_dir, manifest_path, spec_path;
  std::string rec_dir, ref_dir, method = "identity";
  std::string p_text = "1/16";
  CorruptionParams params;
  MaskParams mask_params;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool resume = false, exclude_idr = false, bernoulli = false;
  bool passthrough = false, export_png = false;

  // Global flags; subcommand options fall through to these.
  app.add_option("--config", config, "codec profile JSON");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--jobs", jobs, "clip-level parallelism");
  app.add_flag("--resume", resume, "skip work already completed");

  CLI::App* inspect = app.add_subcommand("inspect", "parse an Annex-B stream");
  inspect->add_option("--in", in_path)->required();
  inspect->add_option("--json", json_path, "write the NALU index as JSON");

  CLI::App* corrupt = app.add_subcommand("corrupt", "apply the (P,L,S) model");
  corrupt->add_option("--in", in_path)->required();
  corrupt->add_option("--out", out_path)->required();
  corrupt->add_option("--p", p_text, "m/l corruption probability");
  corrupt->add_option("--loc", params.location, "fragment location in [0,1]");
  corrupt->add_option("--size", params.frag_size, "fragment size in bytes");
  corrupt->add_flag("--exclude-idr", exclude_idr, "never corrupt IDR slices");
  corrupt->add_flag("--bernoulli", bernoulli,
                    "per-frame Bernoulli(m/l) instead of exact m per GOP");
  corrupt->add_flag("--allow-passthrough", passthrough,
                    "tolerate zero selections (copy input through)");
  corrupt->add_option("--log", log_path, "write the edit log as JSON");

  CLI::App* decode_cmd = app.add_subcommand("decode", "decode to raw YUV");
  decode_cmd->add_option("--in", in_path)->required();
  decode_cmd->add_option("--out", out_path)->required();

  CLI::App* mask_cmd = app.add_subcommand("mask", "masks for a decoded pair");
  mask_cmd->add_option("--orig", rec_dir, "original frames .yuv")->required();
  mask_cmd->add_option("--corr", ref_dir, "corrupted frames .yuv")->required();
  mask_cmd->add_option("--out", out_path, "output mask directory")->required();
  mask_cmd->add_option("--threshold", mask_params.threshold);
  mask_cmd->add_option("--open-radius", mask_params.open_radius);
  mask_cmd->add_option("--close-radius", mask_params.close_radius);
  mask_cmd->add_option("--min-area", mask_params.min_component_area);
  mask_cmd->add_flag("--chroma", mask_params.include_chroma);

  CLI::App* stats = app.add_subcommand("stats", "recompute branch statistics");
  stats->add_option("--branch", branch_dir)->required();

  CLI::App* branch = app.add_subcommand("branch", "build one dataset branch");
  branch->add_option("--source", source_dir, "directory of source clips")
      ->required();
  branch->add_option("--out", out_path, "branch output directory")->required();
  branch->add_option("--p", p_text);
  branch->add_option("--loc", params.location);
  branch->add_option("--size", params.frag_size);
  branch->add_flag("--exclude-idr", exclude_idr);
  branch->add_flag("--bernoulli", bernoulli);
  branch->add_flag("--allow-passthrough", passthrough);
  branch->add_flag("--png", export_png, "also export frames as PNG");
  branch->add_option("--threshold", mask_params.threshold);

  CLI::App* matrix = app.add_subcommand("matrix", "build several branches");
  matrix->add_option("--spec", spec_path, "matrix spec JSON")->required();

  CLI::App* verify = app.add_subcommand("verify", "re-check a built branch");
  verify->add_option("--manifest", manifest_path)->required();

  CLI::App* eval = app.add_subcommand("eval", "PSNR/SSIM against references");
  eval->add_option("--rec", rec_dir)->required();
  eval->add_option("--ref", ref_dir)->required();
  eval->add_option("--out", out_path, "report JSON path");

  CLI::App* recover = app.add_subcommand("recover", "run a baseline recovery");
  recover->add_option("--method", method)
      ->check(CLI::IsMember({"identity", "temporal", "spatial"}));
  recover->add_option("--in", branch_dir, "branch directory")->required();
  recover->add_option("--out", out_path, "output directory")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inspect->parsed()) return cmd_inspect(in_path, json_path);
    if (corrupt->parsed() || branch->parsed()) {
      if (!parse_p(p_text, params)) {
        std::fprintf(stderr, "bad --p value '%s', expected m/l\n",
                     p_text.c_str());
        return kExitTotal;
      }
      params.seed = seed;
      params.idr_eligible = !exclude_idr;
      params.bernoulli = bernoulli;
      if (corrupt->parsed()) {
        return cmd_corrupt(in_path, out_path, log_path, params, passthrough);
      }
      BranchSpec spec;
      spec.source_dir = source_dir;
      spec.out_dir = out_path;
      spec.params = params;
      spec.mask_params = mask_params;
      spec.profile = load_profile(config);
      spec.parallelism = jobs;
      spec.resume = resume;
      spec.export_png = export_png;
      spec.allow_passthrough = passthrough;
      return cmd_branch(std::move(spec));
    }
    if (decode_cmd->parsed()) return cmd_decode(in_path, out_path, config);
    if (mask_cmd->parsed()) return cmd_mask(rec_dir, ref_dir, out_path, mask_params);
    if (stats->parsed()) return cmd_stats(branch_dir);
    if (matrix->parsed()) return cmd_matrix(spec_path, config, jobs, resume);
    if (verify->parsed()) return cmd_verify(manifest_path);
    if (eval->parsed()) return cmd_eval(rec_dir, ref_dir, out_path);
    if (recover->parsed()) return cmd_recover(method, branch_dir, out_path);
  } catch (const Error& error) {
    std::fprintf(stderr, "corvid: %s\n", error.what());
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::fprintf(stderr, "corvid: %s\n", error.what());
    return kExitTotal;
  }
  return kExitTotal;
}

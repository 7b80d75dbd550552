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

#include "corvid/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "corvid/png_io.hpp"
#include "corvid/rng.hpp"

namespace fs = std::filesystem;

namespace corvid {

std::uint64_t derive_clip_seed(std::uint64_t master_seed,
                               std::string_view clip_id) {
  return derive_keyed_seed(master_seed, clip_id);
}

std::string branch_dir_name(const CorruptionParams& params) {
  char name[96];
  std::snprintf(name, sizeof(name), "p%u-%u_L%g_S%u", params.p_num,
                params.p_den, params.location, params.frag_size);
  return name;
}

namespace {

std::string mask_file_name(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "%05zu.png", index);
  return name;
}

struct SourceClip {
  std::string clip_id;
  std::string path;
  bool png_sequence = false;
  int width = 0;
  int height = 0;
};

std::vector<SourceClip> discover_sources(const std::string& source_dir) {
  if (!fs::is_directory(source_dir)) {
    raise(Errc::io_error, "source directory missing: " + source_dir);
  }
  std::vector<SourceClip> sources;
  for (const auto& entry : fs::directory_iterator(source_dir)) {
    if (entry.is_regular_file()) {
      std::string name = entry.path().filename().string();
      auto dims = dims_from_filename(name);
      if (!dims) continue;
      SourceClip clip;
      clip.clip_id = name.substr(0, name.rfind('_'));
      clip.path = entry.path().string();
      clip.width = dims->first;
      clip.height = dims->second;
      sources.push_back(std::move(clip));
    } else if (entry.is_directory()) {
      if (fs::exists(entry.path() / "00000.png")) {
        SourceClip clip;
        clip.clip_id = entry.path().filename().string();
        clip.path = entry.path().string();
        clip.png_sequence = true;
        sources.push_back(std::move(clip));
      }
    }
  }
  std::sort(sources.begin(), sources.end(),
            [](const SourceClip& a, const SourceClip& b) {
              return a.clip_id < b.clip_id;
            });
  if (sources.empty()) {
    raise(Errc::empty_input,
          "no sources in " + source_dir +
              " (expected <stem>_<W>x<H>.yuv files or PNG sequence dirs)");
  }
  return sources;
}

std::vector<FramePlane> read_png_sequence(const std::string& dir) {
  std::vector<FramePlane> frames;
  for (std::size_t index = 0;; ++index) {
    fs::path path = fs::path(dir) / mask_file_name(index);
    if (!fs::exists(path)) break;
    FramePlane frame = rgb_to_yuv420(read_png_rgb(path.string()));
    frame.frame_index = static_cast<int>(index);
    frames.push_back(std::move(frame));
  }
  if (frames.empty()) {
    raise(Errc::empty_input, "no %05d.png frames in " + dir);
  }
  return frames;
}

std::string yuv_name(const std::string& stem, int width, int height) {
  return stem + "_" + std::to_string(width) + "x" + std::to_string(height) +
         ".yuv";
}

struct ClipBuildResult {
  ClipEntry entry;
  std::vector<double> ratios;
};

// Copies pristine artifacts from a previously built branch so a matrix
// encodes and decodes each source exactly once.
struct ReuseSource {
  const BranchManifest* manifest = nullptr;
  fs::path branch_dir;
};

ClipBuildResult build_clip(const BranchSpec& spec, const SourceClip& source,
                           const fs::path& branch_dir,
                           const ReuseSource& reuse) {
  ClipBuildResult result;
  ClipEntry& entry = result.entry;
  entry.clip_id = source.clip_id;
  entry.source_path = source.path;
  entry.seed = derive_clip_seed(spec.params.seed, source.clip_id);

  fs::path clip_dir = branch_dir / source.clip_id;
  fs::create_directories(clip_dir / "orig_frames");
  fs::create_directories(clip_dir / "corr_frames");
  fs::create_directories(clip_dir / "masks");

  // Establish the encoder input and frame geometry.
  std::string encode_input;
  int width = 0, height = 0;
  if (source.png_sequence) {
    std::vector<FramePlane> frames = read_png_sequence(source.path);
    width = frames.front().width;
    height = frames.front().height;
    entry.source_yuv = source.clip_id + "/" + yuv_name("source", width, height);
    encode_input = (branch_dir / entry.source_yuv).string();
    write_yuv(encode_input, frames);
  } else {
    width = source.width;
    height = source.height;
    encode_input = source.path;
  }
  entry.width = width;
  entry.height = height;

  entry.pristine_bitstream = source.clip_id + "/pristine.264";
  entry.corrupted_bitstream = source.clip_id + "/corrupted.264";
  entry.orig_frames =
      source.clip_id + "/orig_frames/" + yuv_name("frames", width, height);
  entry.corr_frames =
      source.clip_id + "/corr_frames/" + yuv_name("frames", width, height);
  entry.mask_dir = source.clip_id + "/masks";
  entry.corruption_log = source.clip_id + "/corruption.json";
  entry.ratios_csv = source.clip_id + "/ratios.csv";
  entry.png_export = spec.export_png;

  fs::path pristine_path = branch_dir / entry.pristine_bitstream;
  fs::path orig_yuv_path = branch_dir / entry.orig_frames;

  const ClipEntry* reusable = nullptr;
  if (reuse.manifest) {
    for (const ClipEntry& candidate : reuse.manifest->clips) {
      if (candidate.clip_id == source.clip_id) {
        reusable = &candidate;
        break;
      }
    }
  }

  Bitstream pristine;
  std::vector<FramePlane> orig_frames;
  if (reusable) {
    fs::copy_file(reuse.branch_dir / reusable->pristine_bitstream,
                  pristine_path, fs::copy_options::overwrite_existing);
    fs::copy_file(reuse.branch_dir / reusable->orig_frames, orig_yuv_path,
                  fs::copy_options::overwrite_existing);
    pristine = load_bitstream(pristine_path.string());
    orig_frames = read_yuv(orig_yuv_path.string(), width, height);
  } else {
    pristine = encode(encode_input, spec.profile, pristine_path.string());
    orig_frames = decode_to_file(pristine_path.string(), spec.profile,
                                 orig_yuv_path.string());
  }

  CorruptionParams params = spec.params;
  params.seed = entry.seed;
  CorruptionResult corruption =
      apply_corruption(pristine, params, spec.allow_passthrough);
  fs::path corrupted_path = branch_dir / entry.corrupted_bitstream;
  save_bitstream(corruption.stream, corrupted_path.string());
  {
    std::ofstream log_out(branch_dir / entry.corruption_log, std::ios::trunc);
    log_out << log_to_json(corruption.log) << "\n";
    if (!log_out) raise(Errc::io_error, "cannot write corruption log");
  }

  fs::path corr_yuv_path = branch_dir / entry.corr_frames;
  std::vector<FramePlane> corr_frames = decode_to_file(
      corrupted_path.string(), spec.profile, corr_yuv_path.string());

  std::vector<AlignedPair> pairs =
      align_frames(std::move(orig_frames), std::move(corr_frames));
  entry.frame_count = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].placeholder) entry.placeholder_frames.push_back(i);
  }
  // Keep the stored corrupted sequence in lockstep with masks and
  // originals: placeholders are materialized.
  if (!entry.placeholder_frames.empty()) {
    std::vector<FramePlane> aligned;
    aligned.reserve(pairs.size());
    for (const AlignedPair& pair : pairs) aligned.push_back(pair.corrupted);
    write_yuv(corr_yuv_path.string(), aligned);
  }

  std::vector<ErrorMask> masks = mask_sequence(pairs, spec.mask_params);
  result.ratios.reserve(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    write_mask_png((branch_dir / entry.mask_dir / mask_file_name(i)).string(),
                   masks[i]);
    result.ratios.push_back(masks[i].area_ratio);
  }
  write_ratios_csv((branch_dir / entry.ratios_csv).string(), result.ratios);

  if (spec.export_png) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      write_png_rgb((branch_dir / source.clip_id / "orig_frames" /
                     mask_file_name(i))
                        .string(),
                    yuv420_to_rgb(pairs[i].original));
      write_png_rgb((branch_dir / source.clip_id / "corr_frames" /
                     mask_file_name(i))
                        .string(),
                    yuv420_to_rgb(pairs[i].corrupted));
    }
  }
  return result;
}

bool manifest_complete(const BranchManifest& manifest,
                       const fs::path& branch_dir) {
  auto exists = [&](const std::string& relative) {
    return !relative.empty() && fs::exists(branch_dir / relative);
  };
  if (!exists(manifest.stats_path)) return false;
  for (const ClipEntry& clip : manifest.clips) {
    if (!exists(clip.pristine_bitstream) || !exists(clip.corrupted_bitstream) ||
        !exists(clip.orig_frames) || !exists(clip.corr_frames) ||
        !exists(clip.corruption_log) || !exists(clip.ratios_csv)) {
      return false;
    }
    for (std::size_t i = 0; i < clip.frame_count; ++i) {
      if (!fs::exists(branch_dir / clip.mask_dir / mask_file_name(i))) {
        return false;
      }
    }
  }
  return true;
}

BranchManifest build_branch_impl(const BranchSpec& spec,
                                 const ReuseSource& reuse) {
  spec.params.validate();
  spec.mask_params.validate();
  spec.profile.validate();

  fs::path branch_dir(spec.out_dir);
  fs::path manifest_path = branch_dir / "manifest.json";

  if (spec.resume && fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    BranchManifest existing = BranchManifest::from_json_text(text);
    if (manifest_complete(existing, branch_dir)) return existing;
  }

  std::vector<SourceClip> sources = discover_sources(spec.source_dir);
  fs::create_directories(branch_dir);

  BranchManifest manifest;
  manifest.branch_id = spec.params.branch_id();
  manifest.params = spec.params;
  manifest.codec_profile = spec.profile;
  manifest.mask_params = spec.mask_params;
  manifest.master_seed = spec.params.seed;
  manifest.tool_version = kToolVersion;
  manifest.stats_path = "stats.json";

  std::vector<ClipBuildResult> results(sources.size());
  std::vector<std::string> errors(sources.size());
  std::vector<Errc> error_codes(sources.size(), Errc::io_error);

  std::atomic<std::size_t> next{0};
  int workers = std::max(1, spec.parallelism);
  auto worker = [&]() {
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= sources.size()) return;
      try {
        results[index] = build_clip(spec, sources[index], branch_dir, reuse);
      } catch (const Error& error) {
        errors[index] = error.what();
        error_codes[index] = error.code();
      } catch (const std::exception& error) {
        errors[index] = error.what();
      }
    }
  };
  if (workers == 1 || sources.size() <= 1) {
    worker();
  } else {
    std::size_t pool_size =
        std::min<std::size_t>(static_cast<std::size_t>(workers), sources.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  std::vector<ClipRatios> clip_ratios;
  Errc first_errc = Errc::encode_failed;
  bool have_errc = false;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!errors[i].empty()) {
      manifest.failures.push_back({sources[i].clip_id, errors[i]});
      if (!have_errc) {
        first_errc = error_codes[i];
        have_errc = true;
      }
      continue;
    }
    manifest.clips.push_back(std::move(results[i].entry));
    clip_ratios.push_back({sources[i].clip_id, std::move(results[i].ratios)});
  }

  if (manifest.clips.empty()) {
    raise(first_errc,
          "all clips failed; first error: " + manifest.failures.front().error);
  }

  BranchStats stats = aggregate_ratios(clip_ratios);
  {
    std::ofstream out(branch_dir / manifest.stats_path, std::ios::trunc);
    out << stats.to_json_text() << "\n";
    if (!out) raise(Errc::io_error, "cannot write stats.json");
  }

  // Manifest last: its presence marks a completed branch.
  fs::path temp_path = branch_dir / "manifest.json.tmp";
  {
    std::ofstream out(temp_path, std::ios::trunc);
    out << manifest.to_json_text() << "\n";
    if (!out) raise(Errc::io_error, "cannot write manifest");
  }
  fs::rename(temp_path, manifest_path);
  return manifest;
}

}  // namespace

BranchManifest build_branch(const BranchSpec& spec) {
  return build_branch_impl(spec, {});
}

std::vector<BranchManifest> branch_matrix(std::span<const BranchSpec> specs) {
  if (specs.empty()) raise(Errc::empty_input, "no branch specs");
  for (const BranchSpec& spec : specs) {
    if (spec.source_dir != specs.front().source_dir) {
      raise(Errc::bad_config, "matrix branches must share a source corpus");
    }
  }

  std::vector<BranchManifest> manifests;
  manifests.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ReuseSource reuse;
    if (i > 0) {
      reuse.manifest = &manifests.front();
      reuse.branch_dir = fs::path(specs.front().out_dir);
    }
    manifests.push_back(build_branch_impl(specs[i], reuse));
  }

  // Cross-branch comparison next to the branch directories.
  std::vector<std::pair<CorruptionParams, BranchStats>> stats;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    fs::path stats_path = fs::path(specs[i].out_dir) / manifests[i].stats_path;
    std::ifstream in(stats_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    stats.push_back({manifests[i].params, BranchStats::from_json_text(text)});
  }
  if (stats.size() >= 2) {
    ComparisonReport report = compare_branches(stats);
    fs::path out_root = fs::path(specs.front().out_dir).parent_path();
    std::ofstream out(out_root / "comparison.json", std::ios::trunc);
    out << report.to_json_text() << "\n";
    if (!out) raise(Errc::io_error, "cannot write comparison.json");
  }
  return manifests;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& check) { return check.passed; });
}

std::string VerificationReport::to_text() const {
  std::string text;
  for (const CheckResult& check : checks) {
    text += check.passed ? "PASS " : "FAIL ";
    text += check.check;
    if (!check.clip_id.empty()) text += " [" + check.clip_id + "]";
    if (!check.detail.empty()) text += ": " + check.detail;
    text += "\n";
  }
  return text;
}

VerificationReport verify_branch(const std::string& manifest_path) {
  if (!fs::exists(manifest_path)) {
    raise(Errc::manifest_missing, manifest_path);
  }
  std::ifstream in(manifest_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  BranchManifest manifest = BranchManifest::from_json_text(text);
  fs::path branch_dir = fs::path(manifest_path).parent_path();

  VerificationReport report;
  auto add = [&](const std::string& check, const std::string& clip_id,
                 bool passed, const std::string& detail) {
    report.checks.push_back({check, clip_id, passed, detail});
  };

  std::set<std::string> referenced;
  referenced.insert(fs::path(manifest_path).filename().string());
  referenced.insert(manifest.stats_path);

  std::vector<ClipRatios> recomputed_ratios;

  for (const ClipEntry& clip : manifest.clips) {
    std::vector<std::string> relative_files = {
        clip.pristine_bitstream, clip.corrupted_bitstream, clip.orig_frames,
        clip.corr_frames,        clip.corruption_log,      clip.ratios_csv};
    if (!clip.source_yuv.empty()) relative_files.push_back(clip.source_yuv);
    for (std::size_t i = 0; i < clip.frame_count; ++i) {
      referenced.insert(clip.mask_dir + "/" + mask_file_name(i));
      if (clip.png_export) {
        referenced.insert(clip.clip_id + "/orig_frames/" + mask_file_name(i));
        referenced.insert(clip.clip_id + "/corr_frames/" + mask_file_name(i));
      }
    }

    std::vector<std::string> missing;
    for (const std::string& relative : relative_files) {
      referenced.insert(relative);
      if (!fs::exists(branch_dir / relative)) missing.push_back(relative);
    }
    add("files_exist", clip.clip_id, missing.empty(),
        missing.empty() ? "" : "missing: " + missing.front() +
                                   (missing.size() > 1 ? " (+" +
                                        std::to_string(missing.size() - 1) +
                                        " more)"
                                                       : ""));
    if (!missing.empty()) continue;

    // Byte accounting: the log must replay the pristine stream into the
    // corrupted one exactly.
    try {
      std::ifstream log_in(branch_dir / clip.corruption_log);
      std::string log_text((std::istreambuf_iterator<char>(log_in)),
                           std::istreambuf_iterator<char>());
      CorruptionLog log = log_from_json(log_text);
      Bitstream pristine =
          load_bitstream((branch_dir / clip.pristine_bitstream).string());
      Bitstream corrupted =
          load_bitstream((branch_dir / clip.corrupted_bitstream).string());
      std::size_t removed_total = 0;
      for (const CorruptionRecord& record : log.records) {
        removed_total += record.removed_len;
      }
      bool sizes_ok = log.original_len == pristine.bytes.size() &&
                      log.corrupted_len == corrupted.bytes.size() &&
                      pristine.bytes.size() ==
                          corrupted.bytes.size() + removed_total;
      bool replay_ok =
          sizes_ok && splice_out(pristine.bytes, log.records) == corrupted.bytes;
      add("byte_accounting", clip.clip_id, sizes_ok && replay_ok,
          sizes_ok ? (replay_ok ? "" : "replayed bytes differ")
                   : "length bookkeeping off (original " +
                         std::to_string(pristine.bytes.size()) +
                         ", corrupted " + std::to_string(corrupted.bytes.size()) +
                         ", sum removed " + std::to_string(removed_total) + ")");
    } catch (const std::exception& error) {
      add("byte_accounting", clip.clip_id, false, error.what());
    }

    // Mask/frame parity: one readable, geometry-correct mask per decoded
    // original frame, and no extras.
    try {
      auto frames = read_yuv((branch_dir / clip.orig_frames).string(),
                             clip.width, clip.height);
      bool parity = frames.size() == clip.frame_count;
      std::string detail;
      if (!parity) {
        detail = "decoded " + std::to_string(frames.size()) +
                 " original frames, manifest says " +
                 std::to_string(clip.frame_count);
      }
      std::vector<double> ratios;
      for (std::size_t i = 0; i < clip.frame_count && parity; ++i) {
        fs::path mask_path = branch_dir / clip.mask_dir / mask_file_name(i);
        if (!fs::exists(mask_path)) {
          parity = false;
          detail = "mask for frame " + std::to_string(i) + " missing (" +
                   clip.mask_dir + "/" + mask_file_name(i) + ")";
          break;
        }
        ErrorMask mask = read_mask_png(mask_path.string());
        if (mask.width != clip.width || mask.height != clip.height) {
          parity = false;
          detail = "mask " + mask_file_name(i) + " has wrong geometry";
          break;
        }
        ratios.push_back(mask.area_ratio);
      }
      if (parity &&
          fs::exists(branch_dir / clip.mask_dir / mask_file_name(clip.frame_count))) {
        parity = false;
        detail = "more masks than frames";
      }
      add("mask_parity", clip.clip_id, parity, detail);
      if (parity) recomputed_ratios.push_back({clip.clip_id, std::move(ratios)});
    } catch (const std::exception& error) {
      add("mask_parity", clip.clip_id, false, error.what());
    }

    // Per-clip ratio recomputation against ratios.csv.
    try {
      std::vector<double> stored =
          read_ratios_csv((branch_dir / clip.ratios_csv).string());
      bool match = !recomputed_ratios.empty() &&
                   recomputed_ratios.back().clip_id == clip.clip_id &&
                   stored == recomputed_ratios.back().ratios;
      add("ratios_recompute", clip.clip_id, match,
          match ? "" : "csv ratios differ from mask recomputation");
    } catch (const std::exception& error) {
      add("ratios_recompute", clip.clip_id, false, error.what());
    }
  }

  // Branch stats must reproduce from the masks alone.
  try {
    std::ifstream stats_in(branch_dir / manifest.stats_path);
    std::string stats_text((std::istreambuf_iterator<char>(stats_in)),
                           std::istreambuf_iterator<char>());
    BranchStats stored = BranchStats::from_json_text(stats_text);
    BranchStats recomputed = aggregate_ratios(recomputed_ratios);
    bool match = stored.frame_count == recomputed.frame_count &&
                 stored.level_histogram == recomputed.level_histogram &&
                 stored.ratio_histogram == recomputed.ratio_histogram &&
                 std::abs(stored.corrupted_frame_fraction -
                          recomputed.corrupted_frame_fraction) < 1e-12 &&
                 std::abs(stored.mean_ratio - recomputed.mean_ratio) < 1e-12;
    add("stats_recompute", "", match,
        match ? "" : "stats.json does not match recomputed statistics");
  } catch (const std::exception& error) {
    add("stats_recompute", "", false, error.what());
  }

  // No orphans: everything under the branch tree must be accounted for.
  {
    std::vector<std::string> orphans;
    for (const auto& entry : fs::recursive_directory_iterator(branch_dir)) {
      if (!entry.is_regular_file()) continue;
      std::string relative =
          fs::relative(entry.path(), branch_dir).generic_string();
      if (!referenced.count(relative)) orphans.push_back(relative);
    }
    add("no_orphans", "", orphans.empty(),
        orphans.empty() ? ""
                        : "unreferenced: " + orphans.front() +
                              (orphans.size() > 1
                                   ? " (+" + std::to_string(orphans.size() - 1) +
                                         " more)"
                                   : ""));
  }

  return report;
}

std::string BranchManifest::to_json_text() const {
  nlohmann::json doc;
  doc["branch_id"] = branch_id;
  doc["params"] = {{"p", params.p_string()},
                   {"loc", params.location},
                   {"size", params.frag_size},
                   {"seed", params.seed},
                   {"exclude_idr", !params.idr_eligible},
                   {"bernoulli", params.bernoulli}};
  doc["codec_profile"] = nlohmann::json::parse(codec_profile.to_json_text());
  doc["mask_params"] = {{"threshold", mask_params.threshold},
                        {"open_radius", mask_params.open_radius},
                        {"close_radius", mask_params.close_radius},
                        {"min_component_area", mask_params.min_component_area},
                        {"include_chroma", mask_params.include_chroma}};
  doc["master_seed"] = master_seed;
  doc["tool_version"] = tool_version;
  doc["stats_path"] = stats_path;
  doc["clips"] = nlohmann::json::array();
  for (const ClipEntry& clip : clips) {
    nlohmann::json clip_doc = {{"clip_id", clip.clip_id},
                               {"source_path", clip.source_path},
                               {"seed", clip.seed},
                               {"pristine_bitstream", clip.pristine_bitstream},
                               {"corrupted_bitstream", clip.corrupted_bitstream},
                               {"orig_frames", clip.orig_frames},
                               {"corr_frames", clip.corr_frames},
                               {"mask_dir", clip.mask_dir},
                               {"corruption_log", clip.corruption_log},
                               {"ratios_csv", clip.ratios_csv},
                               {"width", clip.width},
                               {"height", clip.height},
                               {"frame_count", clip.frame_count},
                               {"placeholder_frames", clip.placeholder_frames},
                               {"png_export", clip.png_export}};
    if (!clip.source_yuv.empty()) clip_doc["source_yuv"] = clip.source_yuv;
    doc["clips"].push_back(std::move(clip_doc));
  }
  doc["failures"] = nlohmann::json::array();
  for (const ClipFailure& failure : failures) {
    doc["failures"].push_back(
        {{"clip_id", failure.clip_id}, {"error", failure.error}});
  }
  return doc.dump(2);
}

BranchManifest BranchManifest::from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  BranchManifest manifest;
  manifest.branch_id = doc.at("branch_id").get<std::string>();
  const auto& params = doc.at("params");
  std::string p = params.at("p").get<std::string>();
  auto slash = p.find('/');
  manifest.params.p_num =
      static_cast<std::uint32_t>(std::stoul(p.substr(0, slash)));
  manifest.params.p_den =
      static_cast<std::uint32_t>(std::stoul(p.substr(slash + 1)));
  manifest.params.location = params.at("loc").get<double>();
  manifest.params.frag_size = params.at("size").get<std::uint32_t>();
  manifest.params.seed = params.at("seed").get<std::uint64_t>();
  manifest.params.idr_eligible = !params.value("exclude_idr", false);
  manifest.params.bernoulli = params.value("bernoulli", false);
  manifest.codec_profile =
      CodecProfile::from_json_text(doc.at("codec_profile").dump());
  const auto& mask_params = doc.at("mask_params");
  manifest.mask_params.threshold = mask_params.at("threshold").get<int>();
  manifest.mask_params.open_radius = mask_params.at("open_radius").get<int>();
  manifest.mask_params.close_radius = mask_params.at("close_radius").get<int>();
  manifest.mask_params.min_component_area =
      mask_params.at("min_component_area").get<int>();
  manifest.mask_params.include_chroma =
      mask_params.value("include_chroma", false);
  manifest.master_seed = doc.at("master_seed").get<std::uint64_t>();
  manifest.tool_version = doc.at("tool_version").get<std::string>();
  manifest.stats_path = doc.at("stats_path").get<std::string>();
  for (const auto& clip_doc : doc.at("clips")) {
    ClipEntry clip;
    clip.clip_id = clip_doc.at("clip_id").get<std::string>();
    clip.source_path = clip_doc.at("source_path").get<std::string>();
    clip.seed = clip_doc.at("seed").get<std::uint64_t>();
    clip.source_yuv = clip_doc.value("source_yuv", "");
    clip.pristine_bitstream =
        clip_doc.at("pristine_bitstream").get<std::string>();
    clip.corrupted_bitstream =
        clip_doc.at("corrupted_bitstream").get<std::string>();
    clip.orig_frames = clip_doc.at("orig_frames").get<std::string>();
    clip.corr_frames = clip_doc.at("corr_frames").get<std::string>();
    clip.mask_dir = clip_doc.at("mask_dir").get<std::string>();
    clip.corruption_log = clip_doc.at("corruption_log").get<std::string>();
    clip.ratios_csv = clip_doc.at("ratios_csv").get<std::string>();
    clip.width = clip_doc.at("width").get<int>();
    clip.height = clip_doc.at("height").get<int>();
    clip.frame_count = clip_doc.at("frame_count").get<std::size_t>();
    clip.placeholder_frames =
        clip_doc.at("placeholder_frames").get<std::vector<std::size_t>>();
    clip.png_export = clip_doc.value("png_export", false);
    manifest.clips.push_back(std::move(clip));
  }
  for (const auto& failure_doc : doc.at("failures")) {
    manifest.failures.push_back(
        {failure_doc.at("clip_id").get<std::string>(),
         failure_doc.at("error").get<std::string>()});
  }
  return manifest;
}

}  // namespace corvid

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

#ifndef CORVID_PIPELINE_HPP
#define CORVID_PIPELINE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corvid/analytics.hpp"
#include "corvid/codec_io.hpp"
#include "corvid/corrupt.hpp"
#include "corvid/mask.hpp"

namespace corvid {

inline constexpr const char* kToolVersion = "0.1.0";

/// One dataset branch to build: sources in, artifacts out.
/// params.seed acts as the branch's master seed; each clip derives its own
/// seed from (master seed, clip id).
struct BranchSpec {
  std::string source_dir;
  std::string out_dir;
  CorruptionParams params;
  MaskParams mask_params;
  CodecProfile profile;
  int parallelism = 1;
  bool resume = false;
  bool export_png = false;
  bool allow_passthrough = false;
};

struct ClipEntry {
  std::string clip_id;
  std::string source_path;
  std::uint64_t seed = 0;
  // Branch-relative paths.
  std::string source_yuv;  // only set when the source needed conversion
  std::string pristine_bitstream;
  std::string corrupted_bitstream;
  std::string orig_frames;  // raw yuv with all decoded original frames
  std::string corr_frames;  // aligned corrupted frames (placeholders zeroed)
  std::string mask_dir;
  std::string corruption_log;
  std::string ratios_csv;
  int width = 0;
  int height = 0;
  std::size_t frame_count = 0;
  std::vector<std::size_t> placeholder_frames;
  bool png_export = false;
};

struct ClipFailure {
  std::string clip_id;
  std::string error;
};

struct BranchManifest {
  std::string branch_id;
  CorruptionParams params;
  CodecProfile codec_profile;
  MaskParams mask_params;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::string stats_path;  // branch-relative
  std::vector<ClipEntry> clips;
  std::vector<ClipFailure> failures;

  std::string to_json_text() const;
  static BranchManifest from_json_text(const std::string& text);
};

std::uint64_t derive_clip_seed(std::uint64_t master_seed,
                               std::string_view clip_id);

/// Filesystem-safe directory name for a branch, e.g. "p1-16_L0.4_S4096".
std::string branch_dir_name(const CorruptionParams& params);

/// Source videos -> encode -> corrupt -> decode(both) -> masks -> stats,
/// with the manifest written last as the completion marker. Per-clip
/// failures are isolated into the manifest's failure list; throws only
/// when every clip fails (or on setup errors). With spec.resume and a
/// complete manifest already on disk, returns it without doing work.
BranchManifest build_branch(const BranchSpec& spec);

struct CheckResult {
  std::string check;    // "files_exist", "byte_accounting", ...
  std::string clip_id;  // empty for branch-level checks
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string to_text() const;
};

/// Re-checks a built branch from its manifest: every referenced file
/// exists, corruption logs replay byte-exactly, mask/frame parity holds,
/// stats recompute to the stored values, and no unreferenced files sit in
/// the branch tree. Throws Errc::manifest_missing if the manifest is gone;
/// failed checks are reported, not thrown.
VerificationReport verify_branch(const std::string& manifest_path);

/// Builds several branches over one source corpus, encoding and decoding
/// each pristine clip only once (later branches copy those artifacts), and
/// writes a cross-branch comparison.json next to the branch directories.
std::vector<BranchManifest> branch_matrix(std::span<const BranchSpec> specs);

}  // namespace corvid

#endif  // CORVID_PIPELINE_HPP

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

#ifndef CORVID_ANALYTICS_HPP
#define CORVID_ANALYTICS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corvid/corrupt.hpp"
#include "corvid/mask.hpp"

namespace corvid {

/// Four-way classification of a frame's corrupted-area ratio. Boundaries
/// are lower-inclusive: 0.10 is Min, 0.30 is Mod.
enum class CorruptionLevel { Unc = 0, Min = 1, Mod = 2, Sev = 3 };

const char* corruption_level_name(CorruptionLevel level);

/// Throws Errc::out_of_range outside [0,1].
CorruptionLevel classify(double ratio);

/// Ratio histogram layout: bin 0 holds exact zeros; bins 1..20 cover
/// (0.05*(k-1), 0.05*k] for k = 1..20.
constexpr std::size_t kRatioBins = 21;
std::size_t ratio_bin(double ratio);

struct ClipStats {
  std::string clip_id;
  std::size_t frame_count = 0;
  std::array<std::size_t, 4> level_histogram{};
  double mean_ratio = 0.0;
  double corrupted_frame_fraction = 0.0;
};

struct BranchStats {
  std::size_t frame_count = 0;
  std::array<std::size_t, 4> level_histogram{};
  std::array<std::size_t, kRatioBins> ratio_histogram{};
  double corrupted_frame_fraction = 0.0;
  double mean_ratio = 0.0;
  std::vector<ClipStats> per_video;

  std::string to_json_text() const;
  static BranchStats from_json_text(const std::string& text);
};

struct ClipRatios {
  std::string clip_id;
  std::vector<double> ratios;
};

/// Exact counting over per-frame area ratios. Throws Errc::empty_input on
/// an empty mask set.
BranchStats aggregate_ratios(std::span<const ClipRatios> clips);
BranchStats aggregate(
    std::span<const std::pair<std::string, std::vector<ErrorMask>>> clips);

void write_ratios_csv(const std::string& path, std::span<const double> ratios);
std::vector<double> read_ratios_csv(const std::string& path);

struct BranchSummary {
  std::string branch_id;
  CorruptionParams params;
  std::size_t frame_count = 0;
  double mean_ratio = 0.0;
  double corrupted_frame_fraction = 0.0;
};

struct ComparisonReport {
  std::vector<BranchSummary> branches;
  /// One entry per (l, L, S) group with >= 2 branches differing in m.
  struct ProbabilityTrend {
    std::string group;  // "l=16, L=0.4, S=4096"
    std::vector<std::string> branch_ids;  // ordered by ascending m
    bool fraction_non_decreasing = false;
    bool mean_ratio_non_decreasing = false;
  };
  std::vector<ProbabilityTrend> probability_trends;

  std::string to_json_text() const;
};

/// Orders branches and reports whether corruption grows with m in P=m/l at
/// fixed (L, S). Needs >= 2 branches.
ComparisonReport compare_branches(
    std::span<const std::pair<CorruptionParams, BranchStats>> branches);

}  // namespace corvid

#endif  // CORVID_ANALYTICS_HPP

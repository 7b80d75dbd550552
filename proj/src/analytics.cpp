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

#include "corvid/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

namespace corvid {

const char* corruption_level_name(CorruptionLevel level) {
  switch (level) {
    case CorruptionLevel::Unc: return "unc";
    case CorruptionLevel::Min: return "min";
    case CorruptionLevel::Mod: return "mod";
    case CorruptionLevel::Sev: return "sev";
  }
  return "unc";
}

CorruptionLevel classify(double ratio) {
  if (!(ratio >= 0.0) || ratio > 1.0) {
    raise(Errc::out_of_range,
          "area ratio must be in [0,1], got " + std::to_string(ratio));
  }
  if (ratio == 0.0) return CorruptionLevel::Unc;
  if (ratio <= 0.10) return CorruptionLevel::Min;
  if (ratio <= 0.30) return CorruptionLevel::Mod;
  return CorruptionLevel::Sev;
}

std::size_t ratio_bin(double ratio) {
  if (ratio == 0.0) return 0;
  auto bin = static_cast<std::size_t>(std::ceil(ratio * 20.0));
  return std::min<std::size_t>(bin, 20);
}

BranchStats aggregate_ratios(std::span<const ClipRatios> clips) {
  BranchStats stats;
  double ratio_sum = 0.0;
  for (const ClipRatios& clip : clips) {
    ClipStats per_clip;
    per_clip.clip_id = clip.clip_id;
    per_clip.frame_count = clip.ratios.size();
    double clip_sum = 0.0;
    for (double ratio : clip.ratios) {
      CorruptionLevel level = classify(ratio);
      per_clip.level_histogram[static_cast<std::size_t>(level)] += 1;
      stats.level_histogram[static_cast<std::size_t>(level)] += 1;
      stats.ratio_histogram[ratio_bin(ratio)] += 1;
      clip_sum += ratio;
    }
    stats.frame_count += clip.ratios.size();
    ratio_sum += clip_sum;
    if (per_clip.frame_count > 0) {
      per_clip.mean_ratio = clip_sum / double(per_clip.frame_count);
      per_clip.corrupted_frame_fraction =
          1.0 - double(per_clip.level_histogram[0]) / double(per_clip.frame_count);
    }
    stats.per_video.push_back(std::move(per_clip));
  }
  if (stats.frame_count == 0) {
    raise(Errc::empty_input, "no masks to aggregate");
  }
  stats.mean_ratio = ratio_sum / double(stats.frame_count);
  stats.corrupted_frame_fraction =
      1.0 - double(stats.level_histogram[0]) / double(stats.frame_count);
  return stats;
}

BranchStats aggregate(
    std::span<const std::pair<std::string, std::vector<ErrorMask>>> clips) {
  std::vector<ClipRatios> ratios;
  ratios.reserve(clips.size());
  for (const auto& [clip_id, masks] : clips) {
    ClipRatios clip;
    clip.clip_id = clip_id;
    clip.ratios.reserve(masks.size());
    for (const ErrorMask& mask : masks) clip.ratios.push_back(mask.area_ratio);
    ratios.push_back(std::move(clip));
  }
  return aggregate_ratios(ratios);
}

namespace {

nlohmann::json clip_stats_json(const ClipStats& clip) {
  return {{"clip_id", clip.clip_id},
          {"frame_count", clip.frame_count},
          {"levels",
           {{"unc", clip.level_histogram[0]},
            {"min", clip.level_histogram[1]},
            {"mod", clip.level_histogram[2]},
            {"sev", clip.level_histogram[3]}}},
          {"mean_ratio", clip.mean_ratio},
          {"corrupted_frame_fraction", clip.corrupted_frame_fraction}};
}

ClipStats clip_stats_from_json(const nlohmann::json& doc) {
  ClipStats clip;
  clip.clip_id = doc.at("clip_id").get<std::string>();
  clip.frame_count = doc.at("frame_count").get<std::size_t>();
  const auto& levels = doc.at("levels");
  clip.level_histogram = {levels.at("unc").get<std::size_t>(),
                          levels.at("min").get<std::size_t>(),
                          levels.at("mod").get<std::size_t>(),
                          levels.at("sev").get<std::size_t>()};
  clip.mean_ratio = doc.at("mean_ratio").get<double>();
  clip.corrupted_frame_fraction =
      doc.at("corrupted_frame_fraction").get<double>();
  return clip;
}

}  // namespace

std::string BranchStats::to_json_text() const {
  nlohmann::json doc;
  doc["frame_count"] = frame_count;
  doc["levels"] = {{"unc", level_histogram[0]},
                   {"min", level_histogram[1]},
                   {"mod", level_histogram[2]},
                   {"sev", level_histogram[3]}};
  // Bin 0 counts exact zeros; bin k>0 covers (0.05*(k-1), 0.05*k].
  doc["ratio_histogram"] = ratio_histogram;
  doc["ratio_histogram_scheme"] = "zero_bin_plus_20_bins_of_0.05_upper_inclusive";
  doc["level_boundaries"] = "lower_inclusive: (0,0.10]=min (0.10,0.30]=mod";
  doc["corrupted_frame_fraction"] = corrupted_frame_fraction;
  doc["mean_ratio"] = mean_ratio;
  doc["per_video"] = nlohmann::json::array();
  for (const ClipStats& clip : per_video) {
    doc["per_video"].push_back(clip_stats_json(clip));
  }
  return doc.dump(2);
}

BranchStats BranchStats::from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  BranchStats stats;
  stats.frame_count = doc.at("frame_count").get<std::size_t>();
  const auto& levels = doc.at("levels");
  stats.level_histogram = {levels.at("unc").get<std::size_t>(),
                           levels.at("min").get<std::size_t>(),
                           levels.at("mod").get<std::size_t>(),
                           levels.at("sev").get<std::size_t>()};
  auto bins = doc.at("ratio_histogram").get<std::vector<std::size_t>>();
  if (bins.size() != kRatioBins) {
    raise(Errc::bad_config, "ratio histogram has wrong bin count");
  }
  std::copy(bins.begin(), bins.end(), stats.ratio_histogram.begin());
  stats.corrupted_frame_fraction =
      doc.at("corrupted_frame_fraction").get<double>();
  stats.mean_ratio = doc.at("mean_ratio").get<double>();
  for (const auto& clip : doc.at("per_video")) {
    stats.per_video.push_back(clip_stats_from_json(clip));
  }
  return stats;
}

void write_ratios_csv(const std::string& path, std::span<const double> ratios) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  out << "frame_index,ratio\n";
  char line[64];
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", i, ratios[i]);
    out << line;
  }
  if (!out) raise(Errc::io_error, "short write on " + path);
}

std::vector<double> read_ratios_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> ratios;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) raise(Errc::io_error, "bad csv line: " + line);
    ratios.push_back(std::stod(line.substr(comma + 1)));
  }
  return ratios;
}

ComparisonReport compare_branches(
    std::span<const std::pair<CorruptionParams, BranchStats>> branches) {
  if (branches.size() < 2) {
    raise(Errc::empty_input, "branch comparison needs at least 2 branches");
  }
  ComparisonReport report;
  for (const auto& [params, stats] : branches) {
    report.branches.push_back({params.branch_id(), params, stats.frame_count,
                               stats.mean_ratio,
                               stats.corrupted_frame_fraction});
  }
  std::sort(report.branches.begin(), report.branches.end(),
            [](const BranchSummary& a, const BranchSummary& b) {
              auto key = [](const BranchSummary& s) {
                return std::make_tuple(s.params.p_den, s.params.location,
                                       s.params.frag_size, s.params.p_num);
              };
              return key(a) < key(b);
            });

  // Group by (l, L, S); within a group branches differ only in m.
  std::map<std::tuple<std::uint32_t, double, std::uint32_t>,
           std::vector<const BranchSummary*>>
      groups;
  for (const BranchSummary& summary : report.branches) {
    groups[{summary.params.p_den, summary.params.location,
            summary.params.frag_size}]
        .push_back(&summary);
  }
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    ComparisonReport::ProbabilityTrend trend;
    char label[96];
    std::snprintf(label, sizeof(label), "l=%u, L=%g, S=%u",
                  std::get<0>(key), std::get<1>(key), std::get<2>(key));
    trend.group = label;
    trend.fraction_non_decreasing = true;
    trend.mean_ratio_non_decreasing = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      trend.branch_ids.push_back(members[i]->branch_id);
      if (i > 0) {
        if (members[i]->corrupted_frame_fraction <
            members[i - 1]->corrupted_frame_fraction) {
          trend.fraction_non_decreasing = false;
        }
        if (members[i]->mean_ratio < members[i - 1]->mean_ratio) {
          trend.mean_ratio_non_decreasing = false;
        }
      }
    }
    report.probability_trends.push_back(std::move(trend));
  }
  return report;
}

std::string ComparisonReport::to_json_text() const {
  nlohmann::json doc;
  doc["branches"] = nlohmann::json::array();
  for (const BranchSummary& summary : branches) {
    doc["branches"].push_back({{"branch_id", summary.branch_id},
                               {"frame_count", summary.frame_count},
                               {"mean_ratio", summary.mean_ratio},
                               {"corrupted_frame_fraction",
                                summary.corrupted_frame_fraction}});
  }
  doc["probability_trends"] = nlohmann::json::array();
  for (const ProbabilityTrend& trend : probability_trends) {
    doc["probability_trends"].push_back(
        {{"group", trend.group},
         {"branches", trend.branch_ids},
         {"fraction_non_decreasing", trend.fraction_non_decreasing},
         {"mean_ratio_non_decreasing", trend.mean_ratio_non_decreasing}});
  }
  return doc.dump(2);
}

}  // namespace corvid

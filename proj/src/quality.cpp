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

#include "corvid/quality.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace corvid {

namespace {

void require_same_dims(const FramePlane& a, const FramePlane& b) {
  a.validate();
  b.validate();
  if (!a.same_dims(b)) {
    raise(Errc::dimension_mismatch,
          std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
              std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

}  // namespace

double psnr(const FramePlane& reference, const FramePlane& test) {
  require_same_dims(reference, test);
  std::uint64_t sum_sq = 0;
  for (std::size_t i = 0; i < reference.luma.size(); ++i) {
    int diff = int(reference.luma[i]) - int(test.luma[i]);
    sum_sq += std::uint64_t(diff * diff);
  }
  if (sum_sq == 0) return std::numeric_limits<double>::infinity();
  double mse = double(sum_sq) / double(reference.luma.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

const std::array<double, kWindow>& gaussian_taps() {
  static const std::array<double, kWindow> taps = [] {
    std::array<double, kWindow> t{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
      double d = i - (kWindow - 1) / 2.0;
      t[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
      sum += t[i];
    }
    for (double& v : t) v /= sum;
    return t;
  }();
  return taps;
}

// Horizontal then vertical weighted sums; `out` has valid-region width
// (w - kWindow + 1) and full height rows are consumed into valid height.
void separable_filter(const std::vector<double>& image, int w, int h,
                      std::vector<double>& out) {
  const auto& taps = gaussian_taps();
  const int valid_w = w - kWindow + 1;
  const int valid_h = h - kWindow + 1;
  std::vector<double> horizontal(std::size_t(h) * valid_w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < valid_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * image[std::size_t(y) * w + x + k];
      }
      horizontal[std::size_t(y) * valid_w + x] = acc;
    }
  }
  out.resize(std::size_t(valid_h) * valid_w);
  for (int y = 0; y < valid_h; ++y) {
    for (int x = 0; x < valid_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * horizontal[std::size_t(y + k) * valid_w + x];
      }
      out[std::size_t(y) * valid_w + x] = acc;
    }
  }
}

}  // namespace

double ssim(const FramePlane& reference, const FramePlane& test) {
  require_same_dims(reference, test);
  const int w = reference.width, h = reference.height;
  if (w < kWindow || h < kWindow) {
    raise(Errc::too_small, "ssim needs at least " + std::to_string(kWindow) +
                               "x" + std::to_string(kWindow) + " frames");
  }

  std::size_t n = reference.luma.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = reference.luma[i];
    double b = test.luma[i];
    x[i] = a;
    y[i] = b;
    xx[i] = a * a;
    yy[i] = b * b;
    xy[i] = a * b;
  }

  std::vector<double> mu_x, mu_y, m_xx, m_yy, m_xy;
  separable_filter(x, w, h, mu_x);
  separable_filter(y, w, h, mu_y);
  separable_filter(xx, w, h, m_xx);
  separable_filter(yy, w, h, m_yy);
  separable_filter(xy, w, h, m_xy);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    double var_x = m_xx[i] - mu_x[i] * mu_x[i];
    double var_y = m_yy[i] - mu_y[i] * mu_y[i];
    double cov = m_xy[i] - mu_x[i] * mu_y[i];
    double numerator = (2.0 * mu_x[i] * mu_y[i] + kC1) * (2.0 * cov + kC2);
    double denominator =
        (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + kC1) * (var_x + var_y + kC2);
    total += numerator / denominator;
  }
  return total / double(mu_x.size());
}

QualityReport evaluate_clip(const std::string& clip_id,
                            std::span<const FramePlane> recovered,
                            std::span<const FramePlane> reference) {
  if (recovered.size() != reference.size()) {
    raise(Errc::inventory_mismatch,
          clip_id + ": " + std::to_string(recovered.size()) +
              " recovered frames vs " + std::to_string(reference.size()) +
              " reference frames");
  }
  QualityReport report;
  report.clip_id = clip_id;
  double psnr_sum = 0.0, ssim_sum = 0.0;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < recovered.size(); ++i) {
    FrameQuality fq;
    fq.frame_index = i;
    fq.psnr_db = psnr(reference[i], recovered[i]);
    fq.ssim = ssim(reference[i], recovered[i]);
    if (std::isinf(fq.psnr_db)) {
      ++report.infinite_psnr_frames;
    } else {
      psnr_sum += fq.psnr_db;
      ++finite;
    }
    ssim_sum += fq.ssim;
    report.per_frame.push_back(fq);
  }
  report.psnr_mean = finite > 0 ? psnr_sum / double(finite)
                                : std::numeric_limits<double>::infinity();
  report.ssim_mean =
      report.per_frame.empty() ? 0.0 : ssim_sum / double(report.per_frame.size());
  return report;
}

namespace {

std::map<std::string, std::pair<std::string, std::pair<int, int>>>
clip_inventory(const std::string& dir) {
  std::map<std::string, std::pair<std::string, std::pair<int, int>>> clips;
  if (!fs::is_directory(dir)) {
    raise(Errc::io_error, dir + " is not a directory");
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    auto dims = dims_from_filename(name);
    if (!dims) continue;
    std::string clip_id = name.substr(0, name.rfind('_'));
    clips[clip_id] = {entry.path().string(), *dims};
  }
  return clips;
}

}  // namespace

SetReport evaluate_set(const std::string& recovered_dir,
                       const std::string& reference_dir) {
  auto recovered = clip_inventory(recovered_dir);
  auto reference = clip_inventory(reference_dir);

  std::vector<std::string> missing, extra;
  for (const auto& [clip_id, _] : reference) {
    if (!recovered.count(clip_id)) missing.push_back(clip_id);
  }
  for (const auto& [clip_id, _] : recovered) {
    if (!reference.count(clip_id)) extra.push_back(clip_id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string detail;
    for (const auto& clip : missing) detail += " missing:" + clip;
    for (const auto& clip : extra) detail += " extra:" + clip;
    raise(Errc::inventory_mismatch, "clip inventories differ:" + detail);
  }
  if (reference.empty()) {
    raise(Errc::empty_input, "no clips found in " + reference_dir);
  }

  SetReport set_report;
  double psnr_sum = 0.0, ssim_sum = 0.0;
  std::size_t finite = 0, total_frames = 0;
  for (const auto& [clip_id, ref_entry] : reference) {
    const auto& rec_entry = recovered.at(clip_id);
    auto ref_frames =
        read_yuv(ref_entry.first, ref_entry.second.first, ref_entry.second.second);
    auto rec_frames =
        read_yuv(rec_entry.first, rec_entry.second.first, rec_entry.second.second);
    QualityReport clip_report = evaluate_clip(clip_id, rec_frames, ref_frames);
    for (const FrameQuality& fq : clip_report.per_frame) {
      if (std::isinf(fq.psnr_db)) {
        ++set_report.infinite_psnr_frames;
      } else {
        psnr_sum += fq.psnr_db;
        ++finite;
      }
      ssim_sum += fq.ssim;
      ++total_frames;
    }
    set_report.clips.push_back(std::move(clip_report));
  }
  set_report.frame_count = total_frames;
  set_report.psnr_mean = finite > 0 ? psnr_sum / double(finite)
                                    : std::numeric_limits<double>::infinity();
  set_report.ssim_mean =
      total_frames > 0 ? ssim_sum / double(total_frames) : 0.0;
  return set_report;
}

std::string SetReport::to_json_text() const {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["metrics"] = {"psnr", "ssim"};  // lpips/vfid reserved for external merge
  doc["averaging"] =
      "frame-weighted; infinite-PSNR frames excluded from psnr_mean and counted";
  doc["frame_count"] = frame_count;
  doc["psnr_mean"] = std::isinf(psnr_mean) ? nlohmann::json("inf")
                                           : nlohmann::json(psnr_mean);
  doc["ssim_mean"] = ssim_mean;
  doc["infinite_psnr_frames"] = infinite_psnr_frames;
  doc["clips"] = nlohmann::json::array();
  for (const QualityReport& clip : clips) {
    nlohmann::json clip_doc;
    clip_doc["clip_id"] = clip.clip_id;
    clip_doc["psnr_mean"] = std::isinf(clip.psnr_mean)
                                ? nlohmann::json("inf")
                                : nlohmann::json(clip.psnr_mean);
    clip_doc["ssim_mean"] = clip.ssim_mean;
    clip_doc["infinite_psnr_frames"] = clip.infinite_psnr_frames;
    clip_doc["per_frame"] = nlohmann::json::array();
    for (const FrameQuality& fq : clip.per_frame) {
      clip_doc["per_frame"].push_back(
          {{"frame", fq.frame_index},
           {"psnr", std::isinf(fq.psnr_db) ? nlohmann::json("inf")
                                           : nlohmann::json(fq.psnr_db)},
           {"ssim", fq.ssim}});
    }
    doc["clips"].push_back(std::move(clip_doc));
  }
  return doc.dump(2);
}

}  // namespace corvid

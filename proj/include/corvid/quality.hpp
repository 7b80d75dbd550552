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

#ifndef CORVID_QUALITY_HPP
#define CORVID_QUALITY_HPP

#include <span>
#include <string>
#include <vector>

#include "corvid/frame.hpp"

namespace corvid {

/// Luma PSNR in dB: 10*log10(255^2 / MSE). Identical frames give
/// +infinity; callers flag and exclude those from means.
double psnr(const FramePlane& reference, const FramePlane& test);

/// Mean local SSIM on luma, 11x11 Gaussian window (sigma 1.5),
/// C1=(0.01*255)^2, C2=(0.03*255)^2, averaged over positions where the
/// window fits entirely. Throws Errc::too_small below 11x11.
double ssim(const FramePlane& reference, const FramePlane& test);

struct FrameQuality {
  std::size_t frame_index = 0;
  double psnr_db = 0.0;  // may be +inf
  double ssim = 0.0;
};

struct QualityReport {
  std::string clip_id;
  std::vector<FrameQuality> per_frame;
  double psnr_mean = 0.0;  // over finite-PSNR frames
  double ssim_mean = 0.0;  // over all frames
  std::size_t infinite_psnr_frames = 0;
};

QualityReport evaluate_clip(const std::string& clip_id,
                            std::span<const FramePlane> recovered,
                            std::span<const FramePlane> reference);

struct SetReport {
  std::vector<QualityReport> clips;
  std::size_t frame_count = 0;
  double psnr_mean = 0.0;  // frame-weighted, finite frames only
  double ssim_mean = 0.0;  // frame-weighted
  std::size_t infinite_psnr_frames = 0;

  /// Versioned report schema; `lpips` and `vfid` keys are reserved for
  /// external tools to merge and are absent here.
  std::string to_json_text() const;
};

/// Pairs `<clip>_<W>x<H>.yuv` files across the two directories by name and
/// scores them. Throws Errc::inventory_mismatch naming the offending clips
/// when the inventories or frame counts differ.
SetReport evaluate_set(const std::string& recovered_dir,
                       const std::string& reference_dir);

}  // namespace corvid

#endif  // CORVID_QUALITY_HPP

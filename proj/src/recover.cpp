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

#include "corvid/recover.hpp"

#include <algorithm>
#include <cmath>

namespace corvid {

void RecoveryInput::validate() const {
  if (frames.size() != masks.size()) {
    raise(Errc::dimension_mismatch,
          clip_id + ": " + std::to_string(frames.size()) + " frames vs " +
              std::to_string(masks.size()) + " masks");
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].validate();
    if (frames[i].width != masks[i].width ||
        frames[i].height != masks[i].height) {
      raise(Errc::dimension_mismatch,
            clip_id + ": frame " + std::to_string(i) +
                " and its mask have different sizes");
    }
  }
}

std::vector<FramePlane> recover_identity(const RecoveryInput& input) {
  input.validate();
  return input.frames;
}

namespace {

// Luma-resolution masks drive chroma too: a chroma sample is masked when
// any of the luma samples it covers is masked.
std::vector<std::uint8_t> chroma_mask(const ErrorMask& mask, int cw, int ch) {
  std::vector<std::uint8_t> bits(std::size_t(cw) * ch, 0);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      std::uint8_t bit = 0;
      for (int dy = 0; dy < 2 && !bit; ++dy) {
        for (int dx = 0; dx < 2 && !bit; ++dx) {
          int lx = 2 * x + dx, ly = 2 * y + dy;
          if (lx >= mask.width || ly >= mask.height) continue;
          bit = mask.bits[std::size_t(ly) * mask.width + lx];
        }
      }
      bits[std::size_t(y) * cw + x] = bit;
    }
  }
  return bits;
}

// Gauss-Seidel diffusion of masked samples toward the mean of their
// in-bounds 4-neighbours. Masked samples start from the mean of the
// unmasked pixels bordering the masked set.
void fill_plane(std::vector<std::uint8_t>& plane, int w, int h,
                const std::vector<std::uint8_t>& mask_bits, int iterations) {
  std::vector<std::size_t> masked;
  for (std::size_t i = 0; i < plane.size(); ++i) {
    if (mask_bits[i]) masked.push_back(i);
  }
  if (masked.empty()) return;

  std::vector<double> image(plane.begin(), plane.end());

  double boundary_sum = 0.0;
  std::size_t boundary_count = 0;
  auto for_each_neighbor = [w, h](std::size_t index, auto&& fn) {
    int x = static_cast<int>(index % w);
    int y = static_cast<int>(index / w);
    if (x > 0) fn(index - 1);
    if (x + 1 < w) fn(index + 1);
    if (y > 0) fn(index - std::size_t(w));
    if (y + 1 < h) fn(index + std::size_t(w));
  };
  for (std::size_t index : masked) {
    for_each_neighbor(index, [&](std::size_t neighbor) {
      if (!mask_bits[neighbor]) {
        boundary_sum += image[neighbor];
        ++boundary_count;
      }
    });
  }
  double initial = 128.0;
  if (boundary_count > 0) {
    initial = boundary_sum / double(boundary_count);
  } else {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (!mask_bits[i]) {
        sum += image[i];
        ++count;
      }
    }
    if (count > 0) initial = sum / double(count);
  }
  for (std::size_t index : masked) image[index] = initial;

  for (int iter = 0; iter < iterations; ++iter) {
    double max_change = 0.0;
    for (std::size_t index : masked) {
      double sum = 0.0;
      int count = 0;
      for_each_neighbor(index, [&](std::size_t neighbor) {
        sum += image[neighbor];
        ++count;
      });
      if (count == 0) continue;
      double updated = sum / count;
      max_change = std::max(max_change, std::abs(updated - image[index]));
      image[index] = updated;
    }
    if (max_change < 0.5) break;
  }

  for (std::size_t index : masked) {
    plane[index] = static_cast<std::uint8_t>(
        std::clamp(std::llround(image[index]), 0LL, 255LL));
  }
}

}  // namespace

std::vector<FramePlane> recover_spatial(const RecoveryInput& input,
                                        int iterations) {
  input.validate();
  std::vector<FramePlane> output = input.frames;
  for (std::size_t t = 0; t < output.size(); ++t) {
    FramePlane& frame = output[t];
    const ErrorMask& mask = input.masks[t];
    fill_plane(frame.luma, frame.width, frame.height, mask.bits, iterations);
    auto cmask = chroma_mask(mask, frame.chroma_width(), frame.chroma_height());
    fill_plane(frame.chroma_u, frame.chroma_width(), frame.chroma_height(),
               cmask, iterations);
    fill_plane(frame.chroma_v, frame.chroma_width(), frame.chroma_height(),
               cmask, iterations);
  }
  return output;
}

std::vector<FramePlane> recover_temporal(const RecoveryInput& input,
                                         int search_radius) {
  input.validate();
  const std::size_t frame_count = input.frames.size();
  std::vector<FramePlane> output = input.frames;

  std::vector<std::vector<std::uint8_t>> chroma_masks(frame_count);
  for (std::size_t t = 0; t < frame_count; ++t) {
    chroma_masks[t] = chroma_mask(input.masks[t], input.frames[t].chroma_width(),
                                  input.frames[t].chroma_height());
  }

  // Donor lookup: nearest frame by |t'-t| with the sample unmasked,
  // preferring the past on ties. Returns npos when the whole window is
  // masked at that sample.
  auto find_donor = [&](std::size_t t, std::size_t index, bool chroma) {
    for (int d = 1; d <= search_radius; ++d) {
      if (std::size_t(d) <= t) {
        std::size_t past = t - std::size_t(d);
        const auto& bits = chroma ? chroma_masks[past] : input.masks[past].bits;
        if (!bits[index]) return past;
      }
      std::size_t future = t + std::size_t(d);
      if (future < frame_count) {
        const auto& bits =
            chroma ? chroma_masks[future] : input.masks[future].bits;
        if (!bits[index]) return future;
      }
    }
    return std::size_t(-1);
  };

  for (std::size_t t = 0; t < frame_count; ++t) {
    FramePlane& frame = output[t];
    const ErrorMask& mask = input.masks[t];

    std::vector<std::uint8_t> luma_left(mask.bits.size(), 0);
    bool any_left = false;
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
      if (!mask.bits[i]) continue;
      std::size_t donor = find_donor(t, i, false);
      if (donor != std::size_t(-1)) {
        frame.luma[i] = input.frames[donor].luma[i];
      } else {
        luma_left[i] = 1;
        any_left = true;
      }
    }

    const auto& cmask = chroma_masks[t];
    std::vector<std::uint8_t> chroma_left(cmask.size(), 0);
    bool any_chroma_left = false;
    for (std::size_t i = 0; i < cmask.size(); ++i) {
      if (!cmask[i]) continue;
      std::size_t donor = find_donor(t, i, true);
      if (donor != std::size_t(-1)) {
        frame.chroma_u[i] = input.frames[donor].chroma_u[i];
        frame.chroma_v[i] = input.frames[donor].chroma_v[i];
      } else {
        chroma_left[i] = 1;
        any_chroma_left = true;
      }
    }

    if (any_left) {
      fill_plane(frame.luma, frame.width, frame.height, luma_left, 200);
    }
    if (any_chroma_left) {
      fill_plane(frame.chroma_u, frame.chroma_width(), frame.chroma_height(),
                 chroma_left, 200);
      fill_plane(frame.chroma_v, frame.chroma_width(), frame.chroma_height(),
                 chroma_left, 200);
    }
  }
  return output;
}

}  // namespace corvid

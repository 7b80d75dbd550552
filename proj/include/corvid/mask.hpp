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

#ifndef CORVID_MASK_HPP
#define CORVID_MASK_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corvid/codec_io.hpp"
#include "corvid/frame.hpp"

namespace corvid {

struct GrayPlane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;
};

/// 0/1 per pixel.
struct BinaryPlane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  std::size_t count_ones() const;
};

struct MaskParams {
  int threshold = 20;  // gray levels, 1..255; >= threshold marks a pixel
  int open_radius = 2;
  int close_radius = 2;
  int min_component_area = 64;  // pixels
  bool include_chroma = false;  // OR-merge upsampled chroma differences

  void validate() const;
};

/// Ground-truth corruption mask for one frame.
struct ErrorMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 clean, 1 corrupted
  double area_ratio = 0.0;

  static ErrorMask from_plane(BinaryPlane plane);
};

/// Per-pixel |original - corrupted| on luma. Throws
/// Errc::dimension_mismatch on unequal geometry.
GrayPlane gray_diff(const FramePlane& original, const FramePlane& corrupted);

// Morphology with a square structuring element of side 2*radius+1;
// outside the plane counts as background. Exposed so tests can pin them
// against a direct reference.
BinaryPlane erode(const BinaryPlane& plane, int radius);
BinaryPlane dilate(const BinaryPlane& plane, int radius);
BinaryPlane morph_open(const BinaryPlane& plane, int radius);
BinaryPlane morph_close(const BinaryPlane& plane, int radius);

/// Removes 8-connected foreground components smaller than min_area.
BinaryPlane remove_small_components(const BinaryPlane& plane, int min_area);

/// Fills 8-connected background pockets (not touching the border) smaller
/// than max_area.
BinaryPlane fill_small_holes(const BinaryPlane& plane, int max_area);

BinaryPlane threshold_plane(const GrayPlane& diff, int threshold);

/// threshold -> open -> close -> drop small components -> fill small holes.
ErrorMask binarize_and_clean(const GrayPlane& diff, const MaskParams& params);

/// Full mask for a frame pair; with params.include_chroma the subsampled
/// chroma differences are thresholded, upsampled 2x nearest-neighbour and
/// OR-merged before cleanup.
ErrorMask make_mask(const FramePlane& original, const FramePlane& corrupted,
                    const MaskParams& params);

/// One mask per aligned pair; placeholder pairs yield all-ones masks.
std::vector<ErrorMask> mask_sequence(std::span<const AlignedPair> pairs,
                                     const MaskParams& params);

/// Masks are stored as 8-bit single-channel PNG with values {0, 255}.
void write_mask_png(const std::string& path, const ErrorMask& mask);
ErrorMask read_mask_png(const std::string& path);

}  // namespace corvid

#endif  // CORVID_MASK_HPP

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

#ifndef CORVID_FRAME_HPP
#define CORVID_FRAME_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corvid/errors.hpp"

namespace corvid {

/// A decoded 4:2:0 planar frame, 8 bits per sample. Chroma planes are
/// subsampled 2x2 with ceiling division for odd dimensions.
struct FramePlane {
  int width = 0;
  int height = 0;
  int frame_index = 0;
  std::vector<std::uint8_t> luma;
  std::vector<std::uint8_t> chroma_u;
  std::vector<std::uint8_t> chroma_v;

  int chroma_width() const { return (width + 1) / 2; }
  int chroma_height() const { return (height + 1) / 2; }

  static FramePlane allocate(int width, int height, int frame_index = 0,
                             std::uint8_t y = 0, std::uint8_t u = 128,
                             std::uint8_t v = 128);

  /// Throws Errc::dimension_mismatch if plane sizes disagree with
  /// width/height.
  void validate() const;

  bool same_dims(const FramePlane& other) const {
    return width == other.width && height == other.height;
  }

  std::uint8_t& y_at(int x, int y_pos) { return luma[std::size_t(y_pos) * width + x]; }
  std::uint8_t y_at(int x, int y_pos) const {
    return luma[std::size_t(y_pos) * width + x];
  }
};

/// Bytes of one frame in the raw planar file layout (Y then U then V).
std::size_t yuv_frame_bytes(int width, int height);

/// Reads a raw planar 4:2:0 file; size must be an exact multiple of the
/// per-frame byte count.
std::vector<FramePlane> read_yuv(const std::string& path, int width, int height);

void write_yuv(const std::string& path, std::span<const FramePlane> frames);

/// Extracts "<W>x<H>" from names following the `<stem>_<W>x<H>.yuv`
/// convention.
std::optional<std::pair<int, int>> dims_from_filename(const std::string& name);

/// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // 3 bytes per pixel
};

// BT.601 limited-range conversions, the convention used by the codec
// profile's yuv420p pixel format.
FramePlane rgb_to_yuv420(const RgbImage& image);
RgbImage yuv420_to_rgb(const FramePlane& frame);

}  // namespace corvid

#endif  // CORVID_FRAME_HPP

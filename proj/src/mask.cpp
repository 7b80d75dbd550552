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

#include "corvid/mask.hpp"

#include <algorithm>
#include <cstdlib>

#include "corvid/png_io.hpp"

namespace corvid {

std::size_t BinaryPlane::count_ones() const {
  std::size_t count = 0;
  for (std::uint8_t bit : bits) count += bit;
  return count;
}

void MaskParams::validate() const {
  if (threshold < 1 || threshold > 255) {
    raise(Errc::out_of_range, "threshold must be in 1..255");
  }
  if (open_radius < 0 || close_radius < 0 || min_component_area < 0) {
    raise(Errc::out_of_range, "mask parameters must be non-negative");
  }
}

ErrorMask ErrorMask::from_plane(BinaryPlane plane) {
  ErrorMask mask;
  mask.width = plane.width;
  mask.height = plane.height;
  std::size_t ones = plane.count_ones();
  mask.bits = std::move(plane.bits);
  mask.area_ratio = mask.bits.empty()
                        ? 0.0
                        : static_cast<double>(ones) /
                              static_cast<double>(mask.bits.size());
  return mask;
}

GrayPlane gray_diff(const FramePlane& original, const FramePlane& corrupted) {
  original.validate();
  corrupted.validate();
  if (!original.same_dims(corrupted)) {
    raise(Errc::dimension_mismatch,
          "frame sizes differ: " + std::to_string(original.width) + "x" +
              std::to_string(original.height) + " vs " +
              std::to_string(corrupted.width) + "x" +
              std::to_string(corrupted.height));
  }
  GrayPlane diff;
  diff.width = original.width;
  diff.height = original.height;
  diff.values.resize(original.luma.size());
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    diff.values[i] = static_cast<std::uint8_t>(
        std::abs(int(original.luma[i]) - int(corrupted.luma[i])));
  }
  return diff;
}

namespace {

// Separable min/max filter; a square window's extremum is the extremum of
// row extrema. Outside the plane is background (0).
enum class Extremum { Min, Max };

BinaryPlane square_filter(const BinaryPlane& plane, int radius, Extremum mode) {
  if (radius == 0) return plane;
  const int w = plane.width, h = plane.height;
  BinaryPlane horizontal{w, h, std::vector<std::uint8_t>(plane.bits.size())};
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = plane.bits.data() + std::size_t(y) * w;
    std::uint8_t* out = horizontal.bits.data() + std::size_t(y) * w;
    for (int x = 0; x < w; ++x) {
      std::uint8_t value = mode == Extremum::Min ? 1 : 0;
      int lo = std::max(0, x - radius);
      int hi = std::min(w - 1, x + radius);
      if (mode == Extremum::Min && (x - radius < 0 || x + radius >= w)) {
        value = 0;  // window sticks out into background
      } else {
        for (int i = lo; i <= hi; ++i) {
          if (mode == Extremum::Min) {
            value = std::min(value, row[i]);
          } else {
            value = std::max(value, row[i]);
          }
        }
      }
      out[x] = value;
    }
  }
  BinaryPlane result{w, h, std::vector<std::uint8_t>(plane.bits.size())};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t value = mode == Extremum::Min ? 1 : 0;
      if (mode == Extremum::Min && (y - radius < 0 || y + radius >= h)) {
        value = 0;
      } else {
        int lo = std::max(0, y - radius);
        int hi = std::min(h - 1, y + radius);
        for (int i = lo; i <= hi; ++i) {
          std::uint8_t bit = horizontal.bits[std::size_t(i) * w + x];
          if (mode == Extremum::Min) {
            value = std::min(value, bit);
          } else {
            value = std::max(value, bit);
          }
        }
      }
      result.bits[std::size_t(y) * w + x] = value;
    }
  }
  return result;
}

}  // namespace

BinaryPlane erode(const BinaryPlane& plane, int radius) {
  return square_filter(plane, radius, Extremum::Min);
}

BinaryPlane dilate(const BinaryPlane& plane, int radius) {
  return square_filter(plane, radius, Extremum::Max);
}

BinaryPlane morph_open(const BinaryPlane& plane, int radius) {
  return dilate(erode(plane, radius), radius);
}

BinaryPlane morph_close(const BinaryPlane& plane, int radius) {
  return erode(dilate(plane, radius), radius);
}

namespace {

// Flood-fill based component labeling; visits each pixel once.
template <typename Keep>
BinaryPlane filter_components(const BinaryPlane& plane, std::uint8_t foreground,
                              bool diagonal_neighbors, Keep keep) {
  const int w = plane.width, h = plane.height;
  BinaryPlane result = plane;
  std::vector<std::uint8_t> visited(plane.bits.size(), 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> component;

  for (std::size_t start = 0; start < plane.bits.size(); ++start) {
    if (visited[start] || plane.bits[start] != foreground) continue;
    component.clear();
    stack.assign(1, start);
    visited[start] = 1;
    bool touches_border = false;
    while (!stack.empty()) {
      std::size_t index = stack.back();
      stack.pop_back();
      component.push_back(index);
      int x = static_cast<int>(index % w);
      int y = static_cast<int>(index / w);
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) touches_border = true;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!diagonal_neighbors && dx != 0 && dy != 0) continue;
          int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          std::size_t neighbor = std::size_t(ny) * w + nx;
          if (visited[neighbor] || plane.bits[neighbor] != foreground) continue;
          visited[neighbor] = 1;
          stack.push_back(neighbor);
        }
      }
    }
    if (!keep(component.size(), touches_border)) {
      for (std::size_t index : component) {
        result.bits[index] = foreground ^ 1;
      }
    }
  }
  return result;
}

}  // namespace

BinaryPlane remove_small_components(const BinaryPlane& plane, int min_area) {
  return filter_components(plane, 1, /*diagonal_neighbors=*/true,
                           [min_area](std::size_t area, bool) {
                             return area >= std::size_t(min_area);
                           });
}

BinaryPlane fill_small_holes(const BinaryPlane& plane, int max_area) {
  return filter_components(plane, 0, /*diagonal_neighbors=*/true,
                           [max_area](std::size_t area, bool touches_border) {
                             return touches_border ||
                                    area >= std::size_t(max_area);
                           });
}

BinaryPlane threshold_plane(const GrayPlane& diff, int threshold) {
  BinaryPlane plane;
  plane.width = diff.width;
  plane.height = diff.height;
  plane.bits.resize(diff.values.size());
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    plane.bits[i] = diff.values[i] >= threshold ? 1 : 0;
  }
  return plane;
}

namespace {

BinaryPlane clean_plane(BinaryPlane plane, const MaskParams& params) {
  plane = morph_open(plane, params.open_radius);
  plane = morph_close(plane, params.close_radius);
  plane = remove_small_components(plane, params.min_component_area);
  plane = fill_small_holes(plane, params.min_component_area);
  return plane;
}

}  // namespace

ErrorMask binarize_and_clean(const GrayPlane& diff, const MaskParams& params) {
  params.validate();
  return ErrorMask::from_plane(
      clean_plane(threshold_plane(diff, params.threshold), params));
}

ErrorMask make_mask(const FramePlane& original, const FramePlane& corrupted,
                    const MaskParams& params) {
  params.validate();
  BinaryPlane plane = threshold_plane(gray_diff(original, corrupted),
                                      params.threshold);
  if (params.include_chroma) {
    int cw = original.chroma_width(), ch = original.chroma_height();
    for (int y = 0; y < ch; ++y) {
      for (int x = 0; x < cw; ++x) {
        std::size_t c = std::size_t(y) * cw + x;
        int du = std::abs(int(original.chroma_u[c]) - int(corrupted.chroma_u[c]));
        int dv = std::abs(int(original.chroma_v[c]) - int(corrupted.chroma_v[c]));
        if (std::max(du, dv) < params.threshold) continue;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            int lx = 2 * x + dx, ly = 2 * y + dy;
            if (lx >= plane.width || ly >= plane.height) continue;
            plane.bits[std::size_t(ly) * plane.width + lx] = 1;
          }
        }
      }
    }
  }
  return ErrorMask::from_plane(clean_plane(std::move(plane), params));
}

std::vector<ErrorMask> mask_sequence(std::span<const AlignedPair> pairs,
                                     const MaskParams& params) {
  params.validate();
  std::vector<ErrorMask> masks;
  masks.reserve(pairs.size());
  for (const AlignedPair& pair : pairs) {
    if (pair.placeholder) {
      BinaryPlane all_ones{pair.original.width, pair.original.height,
                           std::vector<std::uint8_t>(pair.original.luma.size(), 1)};
      masks.push_back(ErrorMask::from_plane(std::move(all_ones)));
    } else {
      masks.push_back(make_mask(pair.original, pair.corrupted, params));
    }
  }
  return masks;
}

void write_mask_png(const std::string& path, const ErrorMask& mask) {
  std::vector<std::uint8_t> pixels(mask.bits.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = mask.bits[i] ? 255 : 0;
  }
  write_png_gray(path, mask.width, mask.height, pixels.data());
}

ErrorMask read_mask_png(const std::string& path) {
  GrayImage image = read_png_gray(path);
  BinaryPlane plane;
  plane.width = image.width;
  plane.height = image.height;
  plane.bits.resize(image.pixels.size());
  for (std::size_t i = 0; i < plane.bits.size(); ++i) {
    plane.bits[i] = image.pixels[i] >= 128 ? 1 : 0;
  }
  return ErrorMask::from_plane(std::move(plane));
}

}  // namespace corvid

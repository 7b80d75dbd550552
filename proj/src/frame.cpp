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

#include "corvid/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>

namespace corvid {

FramePlane FramePlane::allocate(int width, int height, int frame_index,
                                std::uint8_t y, std::uint8_t u,
                                std::uint8_t v) {
  FramePlane frame;
  frame.width = width;
  frame.height = height;
  frame.frame_index = frame_index;
  frame.luma.assign(std::size_t(width) * height, y);
  std::size_t chroma_size =
      std::size_t(frame.chroma_width()) * frame.chroma_height();
  frame.chroma_u.assign(chroma_size, u);
  frame.chroma_v.assign(chroma_size, v);
  return frame;
}

void FramePlane::validate() const {
  if (width <= 0 || height <= 0) {
    raise(Errc::dimension_mismatch, "non-positive frame dimensions");
  }
  std::size_t luma_size = std::size_t(width) * height;
  std::size_t chroma_size = std::size_t(chroma_width()) * chroma_height();
  if (luma.size() != luma_size || chroma_u.size() != chroma_size ||
      chroma_v.size() != chroma_size) {
    raise(Errc::dimension_mismatch,
          "plane sizes disagree with " + std::to_string(width) + "x" +
              std::to_string(height));
  }
}

std::size_t yuv_frame_bytes(int width, int height) {
  std::size_t luma = std::size_t(width) * height;
  std::size_t chroma = std::size_t((width + 1) / 2) * ((height + 1) / 2);
  return luma + 2 * chroma;
}

std::vector<FramePlane> read_yuv(const std::string& path, int width,
                                 int height) {
  if (width <= 0 || height <= 0) {
    raise(Errc::dimension_mismatch, "non-positive dimensions for " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  in.seekg(0, std::ios::end);
  auto file_size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);

  std::size_t frame_bytes = yuv_frame_bytes(width, height);
  if (file_size % frame_bytes != 0) {
    raise(Errc::io_error, path + ": size " + std::to_string(file_size) +
                              " is not a multiple of the " +
                              std::to_string(frame_bytes) + "-byte frame");
  }
  std::size_t count = file_size / frame_bytes;
  std::vector<FramePlane> frames;
  frames.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FramePlane frame = FramePlane::allocate(width, height, static_cast<int>(i));
    in.read(reinterpret_cast<char*>(frame.luma.data()),
            static_cast<std::streamsize>(frame.luma.size()));
    in.read(reinterpret_cast<char*>(frame.chroma_u.data()),
            static_cast<std::streamsize>(frame.chroma_u.size()));
    in.read(reinterpret_cast<char*>(frame.chroma_v.data()),
            static_cast<std::streamsize>(frame.chroma_v.size()));
    if (!in) raise(Errc::io_error, "short read on " + path);
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_yuv(const std::string& path, std::span<const FramePlane> frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  for (const FramePlane& frame : frames) {
    frame.validate();
    out.write(reinterpret_cast<const char*>(frame.luma.data()),
              static_cast<std::streamsize>(frame.luma.size()));
    out.write(reinterpret_cast<const char*>(frame.chroma_u.data()),
              static_cast<std::streamsize>(frame.chroma_u.size()));
    out.write(reinterpret_cast<const char*>(frame.chroma_v.data()),
              static_cast<std::streamsize>(frame.chroma_v.size()));
  }
  if (!out) raise(Errc::io_error, "short write on " + path);
}

std::optional<std::pair<int, int>> dims_from_filename(const std::string& name) {
  static const std::regex pattern(R"(_(\d+)x(\d+)\.yuv$)");
  std::smatch match;
  if (!std::regex_search(name, match, pattern)) return std::nullopt;
  return std::make_pair(std::stoi(match[1]), std::stoi(match[2]));
}

namespace {

std::uint8_t clamp_u8(double value) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
}

}  // namespace

FramePlane rgb_to_yuv420(const RgbImage& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != std::size_t(image.width) * image.height * 3) {
    raise(Errc::dimension_mismatch, "bad RGB image geometry");
  }
  FramePlane frame = FramePlane::allocate(image.width, image.height);
  int cw = frame.chroma_width();

  // Full-resolution chroma first, then 2x2 box average.
  std::vector<double> cb(std::size_t(image.width) * image.height);
  std::vector<double> cr(cb.size());
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      std::size_t p = (std::size_t(y) * image.width + x) * 3;
      double r = image.pixels[p], g = image.pixels[p + 1], b = image.pixels[p + 2];
      double yv = 16.0 + (65.738 * r + 129.057 * g + 25.064 * b) / 256.0;
      cb[std::size_t(y) * image.width + x] =
          128.0 + (-37.945 * r - 74.494 * g + 112.439 * b) / 256.0;
      cr[std::size_t(y) * image.width + x] =
          128.0 + (112.439 * r - 94.154 * g - 18.285 * b) / 256.0;
      frame.luma[std::size_t(y) * image.width + x] = clamp_u8(yv);
    }
  }
  for (int y = 0; y < frame.chroma_height(); ++y) {
    for (int x = 0; x < cw; ++x) {
      double sum_b = 0, sum_r = 0;
      int count = 0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          int sx = 2 * x + dx, sy = 2 * y + dy;
          if (sx >= image.width || sy >= image.height) continue;
          sum_b += cb[std::size_t(sy) * image.width + sx];
          sum_r += cr[std::size_t(sy) * image.width + sx];
          ++count;
        }
      }
      frame.chroma_u[std::size_t(y) * cw + x] = clamp_u8(sum_b / count);
      frame.chroma_v[std::size_t(y) * cw + x] = clamp_u8(sum_r / count);
    }
  }
  return frame;
}

RgbImage yuv420_to_rgb(const FramePlane& frame) {
  frame.validate();
  RgbImage image;
  image.width = frame.width;
  image.height = frame.height;
  image.pixels.resize(std::size_t(frame.width) * frame.height * 3);
  int cw = frame.chroma_width();
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      double yv = frame.luma[std::size_t(y) * frame.width + x] - 16.0;
      double u = frame.chroma_u[std::size_t(y / 2) * cw + x / 2] - 128.0;
      double v = frame.chroma_v[std::size_t(y / 2) * cw + x / 2] - 128.0;
      double r = (298.082 * yv + 408.583 * v) / 256.0;
      double g = (298.082 * yv - 100.291 * u - 208.120 * v) / 256.0;
      double b = (298.082 * yv + 516.412 * u) / 256.0;
      std::size_t p = (std::size_t(y) * frame.width + x) * 3;
      image.pixels[p] = clamp_u8(r);
      image.pixels[p + 1] = clamp_u8(g);
      image.pixels[p + 2] = clamp_u8(b);
    }
  }
  return image;
}

}  // namespace corvid

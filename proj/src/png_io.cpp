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

#include "corvid/png_io.hpp"

#include <cstdio>
#include <memory>

#include <png.h>

namespace corvid {

namespace {

struct FileCloser {
  void operator()(std::FILE* file) const {
    if (file) std::fclose(file);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_png(const std::string& path, int width, int height, int color_type,
               int channels, const std::uint8_t* pixels) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) raise(Errc::io_error, "cannot open " + path + " for writing");

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    raise(Errc::io_error, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    raise(Errc::io_error, "libpng write error on " + path);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(pixels + std::size_t(y) * width * channels);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void read_png(const std::string& path, int expect_channels, int& width,
              int& height, std::vector<std::uint8_t>& pixels) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) raise(Errc::io_error, "cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::io_error, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::io_error, "libpng read error on " + path);
  }
  png_init_io(png, file.get());
  png_read_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  int color_type = png_get_color_type(png, info);
  int bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (expect_channels == 1 &&
      (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGBA ||
       color_type == PNG_COLOR_TYPE_PALETTE)) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  if (expect_channels == 3 &&
      (color_type == PNG_COLOR_TYPE_GRAY ||
       color_type == PNG_COLOR_TYPE_GRAY_ALPHA)) {
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);

  pixels.resize(std::size_t(width) * height * expect_channels);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[y] = pixels.data() + std::size_t(y) * width * expect_channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
}

}  // namespace

void write_png_gray(const std::string& path, int width, int height,
                    const std::uint8_t* pixels) {
  write_png(path, width, height, PNG_COLOR_TYPE_GRAY, 1, pixels);
}

GrayImage read_png_gray(const std::string& path) {
  GrayImage image;
  read_png(path, 1, image.width, image.height, image.pixels);
  return image;
}

void write_png_rgb(const std::string& path, const RgbImage& image) {
  write_png(path, image.width, image.height, PNG_COLOR_TYPE_RGB, 3,
            image.pixels.data());
}

RgbImage read_png_rgb(const std::string& path) {
  RgbImage image;
  read_png(path, 3, image.width, image.height, image.pixels);
  return image;
}

}  // namespace corvid

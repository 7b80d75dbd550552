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

#ifndef CORVID_PNG_IO_HPP
#define CORVID_PNG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "corvid/frame.hpp"

namespace corvid {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

void write_png_gray(const std::string& path, int width, int height,
                    const std::uint8_t* pixels);
GrayImage read_png_gray(const std::string& path);

void write_png_rgb(const std::string& path, const RgbImage& image);
RgbImage read_png_rgb(const std::string& path);

}  // namespace corvid

#endif  // CORVID_PNG_IO_HPP

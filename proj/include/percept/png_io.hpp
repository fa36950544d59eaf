/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_PNG_IO_HPP_
#define PERCEPT_PNG_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "percept/image.hpp"

namespace percept::imaging {

// 8-bit RGB only. Non-RGB files raise FormatError naming the file.
Image read_png(const std::string& path);
void write_png(const std::string& path, const Image& img);

// Raw 8-bit RGB buffer (h*w*3), used by the chart renderer.
void write_png_rgb8(const std::string& path, const std::uint8_t* rgb, int h,
                    int w);

}  // namespace percept::imaging

#endif  // PERCEPT_PNG_IO_HPP_

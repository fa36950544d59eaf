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
#ifndef PERCEPT_JPEG_IO_HPP_
#define PERCEPT_JPEG_IO_HPP_

#include <cstdint>
#include <vector>

#include "percept/image.hpp"

namespace percept::imaging {

// In-memory baseline JPEG round trip. Throws CodecError on codec failure.
std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality);
Image decode_jpeg(const std::vector<std::uint8_t>& bytes);

}  // namespace percept::imaging

#endif  // PERCEPT_JPEG_IO_HPP_

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
#ifndef PERCEPT_MASKS_HPP_
#define PERCEPT_MASKS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "percept/image.hpp"
#include "percept/rng.hpp"

namespace percept::masks {

using imaging::Image;

// One binary matrix (H x W), stored as bytes 0/1.
struct Mask {
  int h = 0;
  int w = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int height, int width)
      : h(height), w(width),
        bits(static_cast<std::size_t>(height) * width, 0) {}

  std::uint8_t at(int y, int x) const {
    return bits[static_cast<std::size_t>(y) * w + x];
  }
  std::uint8_t& at(int y, int x) {
    return bits[static_cast<std::size_t>(y) * w + x];
  }
  std::size_t coverage() const;
};

// Exact partition of the pixel grid into n masks made of whole g x g cells.
struct MaskSet {
  int h = 0;
  int w = 0;
  int grid = 0;
  std::uint64_t seed = 0;
  std::vector<Mask> masks;

  int count() const { return static_cast<int>(masks.size()); }
};

// Shuffles all (H/g)*(W/g) cells with the seeded source, then deals them
// round-robin into n masks: an exact partition, per-mask cell counts differ
// by at most one.
MaskSet generate_mask_set(int h, int w, int grid, int n, Rng& rng);

// channels of each masked pixel set to 0, others unchanged
Image mask_out(const Image& img, const Mask& mask);

// keep pixels the mask owns, zero the rest (the complement of mask_out)
Image mask_keep(const Image& img, const Mask& mask);

// Output pixel = value from the unique part whose mask owns that pixel.
Image aggregate(const std::vector<Image>& parts, const MaskSet& set);

void save_mask_set(const MaskSet& set, const std::string& path);
MaskSet load_mask_set(const std::string& path);
void save_mask_set_stream(const MaskSet& set, std::ostream& os);
MaskSet load_mask_set_stream(std::istream& is);

}  // namespace percept::masks

#endif  // PERCEPT_MASKS_HPP_

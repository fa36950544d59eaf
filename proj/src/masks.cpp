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

#include "percept/masks.hpp"

#include <cstring>
#include <fstream>
#include <numeric>

#include "percept/errors.hpp"

namespace percept::masks {
namespace {

constexpr char kMaskMagic[8] = {'P', 'C', 'P', 'T', 'M', 'S', 'K', '1'};

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
  write_u32(os, static_cast<std::uint32_t>(v & 0xffffffffULL));
  write_u32(os, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& is) {
  const std::uint64_t lo = read_u32(is);
  const std::uint64_t hi = read_u32(is);
  return lo | (hi << 32);
}

}  // namespace

std::size_t Mask::coverage() const {
  std::size_t n = 0;
  for (std::uint8_t b : bits) n += b;
  return n;
}

MaskSet generate_mask_set(int h, int w, int grid, int n, Rng& rng) {
  if (h < 1 || w < 1) throw ParamError("masks: dimensions must be >= 1");
  if (grid < 1) throw ParamError("masks: grid must be >= 1");
  if (n < 1) throw ParamError("masks: mask count must be >= 1");
  if (h % grid != 0 || w % grid != 0)
    throw ParamError("masks: grid " + std::to_string(grid) +
                     " does not divide " + std::to_string(h) + "x" +
                     std::to_string(w));
  const int cells_y = h / grid;
  const int cells_x = w / grid;
  const int cell_count = cells_y * cells_x;
  if (n > cell_count)
    throw ParamError("masks: " + std::to_string(n) + " masks exceed " +
                     std::to_string(cell_count) + " grid cells");

  std::vector<int> cells(cell_count);
  std::iota(cells.begin(), cells.end(), 0);
  rng.shuffle(cells);

  MaskSet set;
  set.h = h;
  set.w = w;
  set.grid = grid;
  set.seed = rng.seed();
  set.masks.assign(n, Mask(h, w));

  for (int i = 0; i < cell_count; ++i) {
    const int cell = cells[i];
    Mask& mask = set.masks[i % n];  // round-robin deal
    const int cy = (cell / cells_x) * grid;
    const int cx = (cell % cells_x) * grid;
    for (int dy = 0; dy < grid; ++dy) {
      for (int dx = 0; dx < grid; ++dx) mask.at(cy + dy, cx + dx) = 1;
    }
  }
  return set;
}

Image mask_out(const Image& img, const Mask& mask) {
  if (img.h != mask.h || img.w != mask.w)
    throw ShapeError("masks: mask shape does not match image");
  Image out = img;
  for (int y = 0; y < img.h; ++y) {
    for (int x = 0; x < img.w; ++x) {
      if (mask.at(y, x)) {
        out.at(y, x, 0) = out.at(y, x, 1) = out.at(y, x, 2) = 0.0;
      }
    }
  }
  return out;
}

Image mask_keep(const Image& img, const Mask& mask) {
  if (img.h != mask.h || img.w != mask.w)
    throw ShapeError("masks: mask shape does not match image");
  Image out(img.h, img.w, 0.0);
  for (int y = 0; y < img.h; ++y) {
    for (int x = 0; x < img.w; ++x) {
      if (mask.at(y, x)) {
        out.at(y, x, 0) = img.at(y, x, 0);
        out.at(y, x, 1) = img.at(y, x, 1);
        out.at(y, x, 2) = img.at(y, x, 2);
      }
    }
  }
  return out;
}

Image aggregate(const std::vector<Image>& parts, const MaskSet& set) {
  if (static_cast<int>(parts.size()) != set.count())
    throw ShapeError("masks: part count " + std::to_string(parts.size()) +
                     " does not match mask count " +
                     std::to_string(set.count()));
  for (const Image& p : parts) {
    if (p.h != set.h || p.w != set.w)
      throw ShapeError("masks: part shape does not match mask set");
  }
  // Ownership is exclusive (masks partition the grid), so this is a pure
  // select: each output pixel is copied from exactly one part.
  Image out(set.h, set.w, 0.0);
  for (int k = 0; k < set.count(); ++k) {
    const Mask& mask = set.masks[k];
    const Image& part = parts[k];
    for (int y = 0; y < set.h; ++y) {
      for (int x = 0; x < set.w; ++x) {
        if (mask.at(y, x)) {
          out.at(y, x, 0) = part.at(y, x, 0);
          out.at(y, x, 1) = part.at(y, x, 1);
          out.at(y, x, 2) = part.at(y, x, 2);
        }
      }
    }
  }
  return out;
}

void save_mask_set(const MaskSet& set, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOError("masks: cannot write " + path);
  save_mask_set_stream(set, os);
  if (!os) throw IOError("masks: write failed for " + path);
}

MaskSet load_mask_set(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("masks: cannot open " + path);
  return load_mask_set_stream(is);
}

void save_mask_set_stream(const MaskSet& set, std::ostream& os) {
  os.write(kMaskMagic, 8);
  write_u32(os, static_cast<std::uint32_t>(set.h));
  write_u32(os, static_cast<std::uint32_t>(set.w));
  write_u32(os, static_cast<std::uint32_t>(set.grid));
  write_u32(os, static_cast<std::uint32_t>(set.count()));
  write_u64(os, set.seed);
  // one bit per pixel, row-major, each mask padded to a whole byte
  const std::size_t stride = (static_cast<std::size_t>(set.h) * set.w + 7) / 8;
  std::vector<std::uint8_t> packed(stride);
  for (const Mask& mask : set.masks) {
    std::fill(packed.begin(), packed.end(), 0);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
      if (mask.bits[i]) packed[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
    os.write(reinterpret_cast<const char*>(packed.data()),
             static_cast<std::streamsize>(stride));
  }
}

MaskSet load_mask_set_stream(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMaskMagic, 8) != 0)
    throw FormatError("masks: bad magic");
  MaskSet set;
  set.h = static_cast<int>(read_u32(is));
  set.w = static_cast<int>(read_u32(is));
  set.grid = static_cast<int>(read_u32(is));
  const int n = static_cast<int>(read_u32(is));
  set.seed = read_u64(is);
  const std::size_t stride = (static_cast<std::size_t>(set.h) * set.w + 7) / 8;
  std::vector<std::uint8_t> packed(stride);
  for (int k = 0; k < n; ++k) {
    is.read(reinterpret_cast<char*>(packed.data()),
            static_cast<std::streamsize>(stride));
    if (!is) throw FormatError("masks: truncated bitmap");
    Mask mask(set.h, set.w);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
      mask.bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
    set.masks.push_back(std::move(mask));
  }
  return set;
}

}  // namespace percept::masks

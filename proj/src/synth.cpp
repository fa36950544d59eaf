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

#include "percept/synth.hpp"

#include <algorithm>
#include <cmath>

#include "percept/errors.hpp"

namespace percept::imaging {
namespace {

struct Color {
  double r, g, b;
};

constexpr Color kFg[10] = {
    {0.90, 0.20, 0.20}, {0.20, 0.85, 0.30}, {0.95, 0.75, 0.15},
    {0.20, 0.70, 0.90}, {0.90, 0.40, 0.70}, {0.60, 0.90, 0.90},
    {0.95, 0.55, 0.20}, {0.70, 0.20, 0.90}, {0.85, 0.85, 0.85},
    {0.30, 0.40, 0.95},
};
constexpr Color kBg[10] = {
    {0.10, 0.10, 0.35}, {0.30, 0.10, 0.30}, {0.15, 0.30, 0.50},
    {0.40, 0.20, 0.10}, {0.12, 0.25, 0.12}, {0.35, 0.15, 0.45},
    {0.10, 0.20, 0.40}, {0.15, 0.35, 0.20}, {0.15, 0.15, 0.20},
    {0.40, 0.35, 0.10},
};

Color jitter(Color c, Rng& rng, double amount) {
  auto j = [&](double v) {
    return std::clamp(v + rng.uniform(-amount, amount), 0.0, 1.0);
  };
  return {j(c.r), j(c.g), j(c.b)};
}

Image paint(int cls, int h, int w, Rng& rng) {
  const Color fg = jitter(kFg[cls], rng, 0.13);
  const Color bg = jitter(kBg[cls], rng, 0.13);
  const int phase = static_cast<int>(rng.uniform_int(4));
  const int ox = static_cast<int>(rng.uniform_int(5)) - 2;
  const int oy = static_cast<int>(rng.uniform_int(5)) - 2;
  const double cx = w / 2.0 + ox;
  const double cy = h / 2.0 + oy;
  const double scale = std::min(h, w) / 16.0;

  Image img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool on = false;
      double mix = -1.0;
      const double dx = x - cx;
      const double dy = y - cy;
      const double r = std::sqrt(dx * dx + dy * dy);
      switch (cls) {
        case 0:  // horizontal stripes
          on = ((y + phase) / 2) % 2 == 0;
          break;
        case 1:  // vertical stripes
          on = ((x + phase) / 2) % 2 == 0;
          break;
        case 2:  // diagonal stripes
          on = ((x + y + phase) / 2) % 2 == 0;
          break;
        case 3:  // checkerboard
          on = (((x + phase) / 4) + ((y + phase) / 4)) % 2 == 0;
          break;
        case 4:  // filled disk
          on = r < 5.0 * scale;
          break;
        case 5:  // ring
          on = r > 4.0 * scale && r < 6.5 * scale;
          break;
        case 6:  // square outline
          on = std::max(std::fabs(dx), std::fabs(dy)) > 4.0 * scale &&
               std::max(std::fabs(dx), std::fabs(dy)) < 6.5 * scale;
          break;
        case 7:  // horizontal gradient
          mix = static_cast<double>(x) / (w - 1);
          break;
        case 8:  // two-tone halves
          on = y < cy;
          break;
        case 9:  // cross
          on = std::fabs(dx) < 2.0 * scale || std::fabs(dy) < 2.0 * scale;
          break;
        default:
          throw ParamError("synth: class id out of range");
      }
      Color c;
      if (mix >= 0.0) {
        c = {bg.r + mix * (fg.r - bg.r), bg.g + mix * (fg.g - bg.g),
             bg.b + mix * (fg.b - bg.b)};
      } else {
        c = on ? fg : bg;
      }
      img.at(y, x, 0) = c.r;
      img.at(y, x, 1) = c.g;
      img.at(y, x, 2) = c.b;
    }
  }

  // pixel noise keeps the classes from being trivially separable
  for (double& v : img.data)
    v = std::clamp(v + rng.normal(0.0, 0.04), 0.0, 1.0);
  return img;
}

}  // namespace

LabeledDataset synthetic_dataset(int num_classes, int per_class, int h, int w,
                                 std::uint64_t seed, Split split) {
  if (num_classes < 2 || num_classes > 10)
    throw ParamError("synth: num_classes must be in [2, 10]");
  if (per_class < 1) throw ParamError("synth: per_class must be >= 1");
  if (h < 8 || w < 8) throw ParamError("synth: images must be at least 8x8");

  LabeledDataset ds;
  ds.num_classes = num_classes;
  ds.split = split;
  Rng root(seed);

  // interleave classes so any prefix of the set is roughly balanced
  for (int i = 0; i < per_class; ++i) {
    for (int cls = 0; cls < num_classes; ++cls) {
      Rng sample = root.child("sample",
                              static_cast<std::uint64_t>(i) * num_classes +
                                  static_cast<std::uint64_t>(cls));
      Image img = paint(cls, h, w, sample);
      // quantize to the 8-bit grid so cache round trips are exact
      const auto bytes = to_bytes(img);
      ds.images.push_back(from_bytes(bytes.data(), h, w));
      ds.labels.push_back(cls);
    }
  }
  return ds;
}

}  // namespace percept::imaging

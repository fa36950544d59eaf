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

#include "percept/resize.hpp"

#include <algorithm>
#include <cmath>

#include "percept/errors.hpp"

namespace percept::imaging {
namespace {

struct Taps {
  int i0, i1;
  double w0, w1;
};

// half-pixel mapping: src = (dst + 0.5) * in/out - 0.5, edge clamped
Taps taps_for(int dst, int in_size, int out_size) {
  const double src =
      (static_cast<double>(dst) + 0.5) * in_size / out_size - 0.5;
  double f = std::floor(src);
  int i0 = static_cast<int>(f);
  double frac = src - f;
  int i1 = i0 + 1;
  i0 = std::clamp(i0, 0, in_size - 1);
  i1 = std::clamp(i1, 0, in_size - 1);
  return {i0, i1, 1.0 - frac, frac};
}

}  // namespace

Image bilinear_resize(const Image& img, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1)
    throw ParamError("resize: output dimensions must be >= 1");
  if (img.h == out_h && img.w == out_w) return img;

  Image out(out_h, out_w);
  std::vector<Taps> col_taps(out_w);
  for (int x = 0; x < out_w; ++x) col_taps[x] = taps_for(x, img.w, out_w);

  for (int y = 0; y < out_h; ++y) {
    const Taps ty = taps_for(y, img.h, out_h);
    for (int x = 0; x < out_w; ++x) {
      const Taps& tx = col_taps[x];
      for (int c = 0; c < 3; ++c) {
        const double top =
            tx.w0 * img.at(ty.i0, tx.i0, c) + tx.w1 * img.at(ty.i0, tx.i1, c);
        const double bot =
            tx.w0 * img.at(ty.i1, tx.i0, c) + tx.w1 * img.at(ty.i1, tx.i1, c);
        out.at(y, x, c) = ty.w0 * top + ty.w1 * bot;
      }
    }
  }
  return out;
}

Image bilinear_resize_adjoint(const Image& grad, int in_h, int in_w) {
  Image out(in_h, in_w, 0.0);
  std::vector<Taps> col_taps(grad.w);
  for (int x = 0; x < grad.w; ++x) col_taps[x] = taps_for(x, in_w, grad.w);

  for (int y = 0; y < grad.h; ++y) {
    const Taps ty = taps_for(y, in_h, grad.h);
    for (int x = 0; x < grad.w; ++x) {
      const Taps& tx = col_taps[x];
      for (int c = 0; c < 3; ++c) {
        const double g = grad.at(y, x, c);
        out.at(ty.i0, tx.i0, c) += ty.w0 * tx.w0 * g;
        out.at(ty.i0, tx.i1, c) += ty.w0 * tx.w1 * g;
        out.at(ty.i1, tx.i0, c) += ty.w1 * tx.w0 * g;
        out.at(ty.i1, tx.i1, c) += ty.w1 * tx.w1 * g;
      }
    }
  }
  return out;
}

}  // namespace percept::imaging

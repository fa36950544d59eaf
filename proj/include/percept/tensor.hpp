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
#ifndef PERCEPT_TENSOR_HPP_
#define PERCEPT_TENSOR_HPP_

#include <cstddef>
#include <vector>

#include "percept/image.hpp"

namespace percept::models {

// Planar activation/parameter tensor (C, H, W), row-major within a plane.
// Vectors use (N, 1, 1); matrices (rows, cols, 1).
struct Tensor {
  int c = 0;
  int h = 0;
  int w = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int c_, int h_, int w_, double fill = 0.0)
      : c(c_), h(h_), w(w_),
        data(static_cast<std::size_t>(c_) * h_ * w_, fill) {}

  static Tensor vec(int n, double fill = 0.0) { return Tensor(n, 1, 1, fill); }
  static Tensor mat(int rows, int cols, double fill = 0.0) {
    return Tensor(rows, cols, 1, fill);
  }

  std::size_t numel() const { return data.size(); }
  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }

  double& at(int ci, int y, int x) {
    return data[(static_cast<std::size_t>(ci) * h + y) * w + x];
  }
  double at(int ci, int y, int x) const {
    return data[(static_cast<std::size_t>(ci) * h + y) * w + x];
  }

  bool same_shape(const Tensor& o) const {
    return c == o.c && h == o.h && w == o.w;
  }
  void zero() { std::fill(data.begin(), data.end(), 0.0); }
};

// channel-last [0,1] image <-> planar tensor
Tensor image_to_tensor(const imaging::Image& img);
imaging::Image tensor_to_image(const Tensor& t);

}  // namespace percept::models

#endif  // PERCEPT_TENSOR_HPP_

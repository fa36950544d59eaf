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
#ifndef PERCEPT_RESIZE_HPP_
#define PERCEPT_RESIZE_HPP_

#include "percept/image.hpp"

namespace percept::imaging {

// Bilinear resampling with half-pixel sample centers (align_corners=false),
// edge clamped. Used everywhere an image changes resolution.
Image bilinear_resize(const Image& img, int out_h, int out_w);

// Transpose of the bilinear_resize linear map, for input gradients: scatters
// grad (out_h x out_w) back onto an (in_h x in_w) canvas with the same
// interpolation weights.
Image bilinear_resize_adjoint(const Image& grad, int in_h, int in_w);

}  // namespace percept::imaging

#endif  // PERCEPT_RESIZE_HPP_

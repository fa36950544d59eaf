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
#ifndef PERCEPT_SYNTH_HPP_
#define PERCEPT_SYNTH_HPP_

#include "percept/image.hpp"
#include "percept/rng.hpp"

namespace percept::imaging {

// Procedural 10-class RGB dataset: class-specific shape/texture patterns
// (stripes, checker, disk, ring, outline, gradient, halves, cross) with
// per-sample color jitter, placement jitter and pixel noise. Deterministic
// per (arguments, seed); pixel values are quantized to the 8-bit grid so a
// generated set round-trips bit-exactly through the binary cache.
LabeledDataset synthetic_dataset(int num_classes, int per_class, int h, int w,
                                 std::uint64_t seed, Split split);

}  // namespace percept::imaging

#endif  // PERCEPT_SYNTH_HPP_

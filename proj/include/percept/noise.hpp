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
#ifndef PERCEPT_NOISE_HPP_
#define PERCEPT_NOISE_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "percept/image.hpp"
#include "percept/rng.hpp"

namespace percept::corruption {

using imaging::Image;

enum class NoiseKind { kGaussian, kPanda, kColorDepth, kResize, kCompose };

// Parameterized corruption. apply() realizes the map; gaussian/panda consume
// randomness, the others are deterministic.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;

  // gaussian
  double mean = 0.0;
  double variance = 0.0;
  // panda
  double alpha = 0.0;  // white probability
  double beta = 0.0;   // black probability
  // colordepth
  int bits = 8;
  // resize
  double factor = 1.0;

  std::vector<NoiseSpec> parts;  // compose, applied in order

  void validate() const;
  bool is_stochastic() const;

  static NoiseSpec gaussian(double mean, double variance);
  static NoiseSpec panda(double alpha, double beta);
  static NoiseSpec color_depth(int bits);
  static NoiseSpec resize(double factor);
  static NoiseSpec compose(std::vector<NoiseSpec> parts);
  static NoiseSpec none() { return gaussian(0.0, 0.0); }

  // "gaussian:mean=0,var=0.01" / "panda:alpha=0.01,beta=0.01" /
  // "colordepth:bits=3" / "resize:factor=2"; '+' chains into a compose.
  static NoiseSpec parse(const std::string& text);
  std::string str() const;

  nlohmann::json to_json() const;
  static NoiseSpec from_json(const nlohmann::json& j);
};

Image apply(const NoiseSpec& spec, const Image& img, Rng& rng);

Image gaussian_noise(const Image& img, double mean, double variance, Rng& rng);
Image panda_noise(const Image& img, double alpha, double beta, Rng& rng);
Image color_depth(const Image& img, int bits);
Image resize_noise(const Image& img, double factor);
Image compose(const Image& img, const std::vector<NoiseSpec>& specs, Rng& rng);

// pre-processing baseline defenses
Image median_smooth(const Image& img, int window);
Image jpeg_defense(const Image& img, int quality);

// J^T of apply(spec, .) at img, replaying the exact draws apply would make
// from an identically seeded source. Quantization (colordepth) has zero
// gradient almost everywhere and contributes zeros.
Image apply_adjoint(const NoiseSpec& spec, const Image& img,
                    const Image& upstream, Rng& rng);

}  // namespace percept::corruption

#endif  // PERCEPT_NOISE_HPP_

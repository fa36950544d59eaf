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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "percept/errors.hpp"
#include "percept/noise.hpp"
#include "percept/resize.hpp"
#include "percept/synth.hpp"
#include "testutil.hpp"

using namespace percept;
using namespace percept::corruption;

namespace {

bool all_in_unit_range(const Image& img) {
  return std::all_of(img.data.begin(), img.data.end(),
                     [](double v) { return v >= 0.0 && v <= 1.0; });
}

double mean_abs_diff(const Image& a, const Image& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    acc += std::fabs(a.data[i] - b.data[i]);
  return acc / static_cast<double>(a.data.size());
}

// independent gather-style bilinear, the oracle for resize_noise
Image reference_bilinear(const Image& src, int oh, int ow) {
  Image out(oh, ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double sy = (y + 0.5) * src.h / oh - 0.5;
      const double sx = (x + 0.5) * src.w / ow - 0.5;
      const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, src.h - 1);
      const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, src.w - 1);
      const int y1 = std::min(y0 + 1, src.h - 1);
      const int x1 = std::min(x0 + 1, src.w - 1);
      const double fy = std::clamp(sy - std::floor(sy), 0.0, 1.0);
      const double fx = std::clamp(sx - std::floor(sx), 0.0, 1.0);
      for (int c = 0; c < 3; ++c) {
        out.at(y, x, c) = (1 - fy) * ((1 - fx) * src.at(y0, x0, c) +
                                      fx * src.at(y0, x1, c)) +
                          fy * ((1 - fx) * src.at(y1, x0, c) +
                                fx * src.at(y1, x1, c));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("noise: gaussian basics") {
  Rng rng(1);
  const Image img = testutil::random_image(16, 16, rng);

  SUBCASE("variance 0 mean 0 is the identity") {
    Rng r(2);
    CHECK(gaussian_noise(img, 0.0, 0.0, r).data == img.data);
  }
  SUBCASE("negative variance is a ParamError") {
    Rng r(2);
    CHECK_THROWS_AS(gaussian_noise(img, 0.0, -1.0, r), ParamError);
  }
  SUBCASE("output always in [0,1]") {
    Rng r(3);
    for (int i = 0; i < 5; ++i)
      CHECK(all_in_unit_range(gaussian_noise(img, 0.0, 0.25, r)));
  }
  SUBCASE("fixed seed gives bit-identical output") {
    Rng r1(7), r2(7);
    CHECK(gaussian_noise(img, 0.0, 0.01, r1).data ==
          gaussian_noise(img, 0.0, 0.01, r2).data);
  }
}

TEST_CASE("noise: gaussian mean absolute perturbation matches the "
          "half-normal value") {
  // mean |N(0, sigma^2)| = sigma * sqrt(2/pi); Monte-Carlo over ~1e6 interior
  // samples on a mid-gray image, 3-sigma acceptance band
  const double sigma = 0.1;
  const int side = 578;  // 578^2 * 3 ~ 1e6 scalar samples
  const Image gray(side, side, 0.5);
  Rng r(12345);
  const Image noisy = gaussian_noise(gray, 0.0, sigma * sigma, r);

  const double got = mean_abs_diff(noisy, gray);
  const double expect = sigma * std::sqrt(2.0 / M_PI);
  const double n = static_cast<double>(gray.data.size());
  const double stddev_mean =
      sigma * std::sqrt(1.0 - 2.0 / M_PI) / std::sqrt(n);
  CHECK(std::fabs(got - expect) < 3.0 * stddev_mean);
}

TEST_CASE("noise: panda") {
  Rng rng(4);
  const Image img(8, 8, 0.5);

  SUBCASE("alpha=beta=0 is the identity") {
    Rng r(5);
    CHECK(panda_noise(img, 0.0, 0.0, r).data == img.data);
  }
  SUBCASE("alpha=1 turns everything white") {
    Rng r(5);
    const Image white = panda_noise(img, 1.0, 0.0, r);
    CHECK(std::all_of(white.data.begin(), white.data.end(),
                      [](double v) { return v == 1.0; }));
  }
  SUBCASE("alpha+beta > 1 is a ParamError") {
    Rng r(5);
    CHECK_THROWS_AS(panda_noise(img, 0.7, 0.6, r), ParamError);
  }
  SUBCASE("pixels only ever become exactly white or black") {
    Rng r(6);
    const Image out = panda_noise(img, 0.3, 0.3, r);
    for (int y = 0; y < out.h; ++y) {
      for (int x = 0; x < out.w; ++x) {
        const double v0 = out.at(y, x, 0), v1 = out.at(y, x, 1),
                     v2 = out.at(y, x, 2);
        const bool unchanged = v0 == 0.5 && v1 == 0.5 && v2 == 0.5;
        const bool white = v0 == 1.0 && v1 == 1.0 && v2 == 1.0;
        const bool black = v0 == 0.0 && v1 == 0.0 && v2 == 0.0;
        CHECK((unchanged || white || black));
      }
    }
  }
  SUBCASE("white-pixel count matches the binomial mean over seeded trials") {
    // 32x32, alpha = 0.01: count ~ Binomial(1024, 0.01), mean 10.24
    const Image gray(32, 32, 0.5);
    const int trials = 10000;
    double total_white = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng r(1000 + t);
      const Image out = panda_noise(gray, 0.01, 0.01, r);
      for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
          if (out.at(y, x, 0) == 1.0 && out.at(y, x, 1) == 1.0 &&
              out.at(y, x, 2) == 1.0)
            total_white += 1.0;
        }
      }
    }
    const double mean_white = total_white / trials;
    const double expect = 1024 * 0.01;
    const double stddev_mean =
        std::sqrt(1024 * 0.01 * 0.99) / std::sqrt(static_cast<double>(trials));
    CHECK(std::fabs(mean_white - expect) < 3.0 * stddev_mean);
  }
}

TEST_CASE("noise: color depth quantization") {
  SUBCASE("t=1 thresholds at one half") {
    Image img(1, 2);
    img.at(0, 0, 0) = 0.49;
    img.at(0, 1, 0) = 0.5;
    const Image out = color_depth(img, 1);
    CHECK(out.at(0, 0, 0) == 0.0);
    CHECK(out.at(0, 1, 0) == 1.0);
  }
  SUBCASE("t=3 at 0.5 gives 4/7 by direct formula evaluation") {
    Image img(1, 1, 0.5);
    const Image out = color_depth(img, 3);
    CHECK(out.at(0, 0, 0) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("t=8 is the identity on 8-bit grid values") {
    Image img(16, 16);
    for (std::size_t i = 0; i < img.data.size(); ++i)
      img.data[i] = static_cast<double>(i % 256) / 255.0;
    CHECK(color_depth(img, 8).data == img.data);
  }
  SUBCASE("all outputs lie on the k/(2^t - 1) grid") {
    Rng rng(8);
    const Image img = testutil::random_image(12, 12, rng);
    for (int t = 1; t <= 8; ++t) {
      const double levels = (1 << t) - 1;
      const Image out = color_depth(img, t);
      for (double v : out.data) {
        const double k = v * levels;
        CHECK(std::fabs(k - std::round(k)) < 1e-9);
      }
    }
  }
  SUBCASE("t outside [1,8] is a ParamError") {
    Image img(2, 2, 0.5);
    CHECK_THROWS_AS(color_depth(img, 0), ParamError);
    CHECK_THROWS_AS(color_depth(img, 9), ParamError);
  }
}

TEST_CASE("noise: resize") {
  SUBCASE("constant image unchanged") {
    const Image img(16, 16, 0.44);
    const Image out = resize_noise(img, 2.0);
    for (double v : out.data) CHECK(v == doctest::Approx(0.44).epsilon(1e-12));
  }
  SUBCASE("factor 1 is the identity") {
    Rng rng(9);
    const Image img = testutil::random_image(10, 10, rng);
    CHECK(resize_noise(img, 1.0).data == img.data);
  }
  SUBCASE("factor 2 on a checkerboard blurs and matches the reference "
          "bilinear oracle") {
    Image board(32, 32);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        const double v = ((x / 2 + y / 2) % 2 == 0) ? 1.0 : 0.0;
        board.at(y, x, 0) = board.at(y, x, 1) = board.at(y, x, 2) = v;
      }
    }
    const Image out = resize_noise(board, 2.0);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < out.data.size(); ++i)
      max_delta = std::max(max_delta, std::fabs(out.data[i] - board.data[i]));
    CHECK(max_delta > 0.0);

    const Image expect =
        reference_bilinear(reference_bilinear(board, 16, 16), 32, 32);
    for (std::size_t i = 0; i < out.data.size(); ++i)
      CHECK(out.data[i] == doctest::Approx(expect.data[i]).epsilon(1e-12));
  }
  SUBCASE("non-integer intermediate size is a ParamError") {
    const Image img(10, 10, 0.2);
    CHECK_THROWS_AS(resize_noise(img, 3.0), ParamError);
  }
}

TEST_CASE("noise: composition") {
  Rng rng(10);
  const Image img = testutil::random_image(8, 8, rng);

  SUBCASE("degenerate parts compose to the identity") {
    Rng r(11);
    const auto spec = std::vector<NoiseSpec>{NoiseSpec::gaussian(0, 0),
                                             NoiseSpec::panda(0, 0)};
    CHECK(compose(img, spec, r).data == img.data);
  }
  SUBCASE("white panda survives 1-bit quantization") {
    Rng r(11);
    const auto spec = std::vector<NoiseSpec>{NoiseSpec::panda(1, 0),
                                             NoiseSpec::color_depth(1)};
    const Image out = compose(img, spec, r);
    CHECK(std::all_of(out.data.begin(), out.data.end(),
                      [](double v) { return v == 1.0; }));
  }
  SUBCASE("seeded compose equals manual sequential application") {
    const auto spec = std::vector<NoiseSpec>{NoiseSpec::gaussian(0, 0.01),
                                             NoiseSpec::panda(0.01, 0.01)};
    Rng r1(13);
    const Image composed = compose(img, spec, r1);
    Rng r2(13);
    const Image step1 = gaussian_noise(img, 0.0, 0.01, r2);
    const Image step2 = panda_noise(step1, 0.01, 0.01, r2);
    CHECK(composed.data == step2.data);
  }
  SUBCASE("empty spec list is a ParamError") {
    Rng r(11);
    CHECK_THROWS_AS(compose(img, {}, r), ParamError);
  }
}

TEST_CASE("noise: median smoothing") {
  Rng rng(14);
  const Image img = testutil::random_image(9, 9, rng);

  CHECK(median_smooth(img, 1).data == img.data);
  CHECK_THROWS_AS(median_smooth(img, 2), ParamError);

  const Image flat(9, 9, 0.3);
  CHECK(median_smooth(flat, 5).data == flat.data);

  // single salt pixel in a constant field disappears under a 3x3 median
  Image salted(9, 9, 0.3);
  salted.at(4, 4, 0) = salted.at(4, 4, 1) = salted.at(4, 4, 2) = 1.0;
  const Image smoothed = median_smooth(salted, 3);
  CHECK(smoothed.data == flat.data);
}

TEST_CASE("noise: jpeg defense") {
  SUBCASE("quality 100 on mid gray stays within 2/255") {
    const Image gray(16, 16, 128.0 / 255.0);
    const Image out = jpeg_defense(gray, 100);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < out.data.size(); ++i)
      max_delta = std::max(max_delta, std::fabs(out.data[i] - gray.data[i]));
    CHECK(max_delta <= 2.0 / 255.0);
    CHECK(all_in_unit_range(out));
  }
  SUBCASE("lower quality does not reduce distortion") {
    const auto ds = imaging::synthetic_dataset(10, 1, 32, 32, 77,
                                               imaging::Split::kTrain);
    const Image& fixture = ds.images[4];
    const double d90 = mean_abs_diff(jpeg_defense(fixture, 90), fixture);
    const double d50 = mean_abs_diff(jpeg_defense(fixture, 50), fixture);
    const double d10 = mean_abs_diff(jpeg_defense(fixture, 10), fixture);
    CHECK(d50 >= d90 - 1e-9);
    CHECK(d10 >= d50 - 1e-9);
  }
  SUBCASE("quality out of range is a ParamError") {
    const Image gray(8, 8, 0.5);
    CHECK_THROWS_AS(jpeg_defense(gray, 0), ParamError);
    CHECK_THROWS_AS(jpeg_defense(gray, 101), ParamError);
  }
}

TEST_CASE("noise: spec parsing and serialization round trip") {
  const auto spec = NoiseSpec::parse(
      "gaussian:mean=0,var=0.01+panda:alpha=0.01,beta=0.01");
  REQUIRE(spec.kind == NoiseKind::kCompose);
  REQUIRE(spec.parts.size() == 2);
  CHECK(spec.parts[0].variance == doctest::Approx(0.01));
  CHECK(spec.parts[1].alpha == doctest::Approx(0.01));
  CHECK(spec.is_stochastic());

  const auto back = NoiseSpec::from_json(spec.to_json());
  CHECK(back.str() == spec.str());

  CHECK_THROWS_AS(NoiseSpec::parse("mystery:level=9"), ParamError);
  CHECK_FALSE(NoiseSpec::parse("colordepth:bits=3").is_stochastic());
}

TEST_CASE("noise: shape preserved by every op") {
  Rng rng(21);
  const Image img = testutil::random_image(16, 16, rng);
  Rng r(22);
  for (const auto& spec :
       {NoiseSpec::gaussian(0, 0.05), NoiseSpec::panda(0.1, 0.1),
        NoiseSpec::color_depth(2), NoiseSpec::resize(2.0)}) {
    const Image out = apply(spec, img, r);
    CHECK(out.h == img.h);
    CHECK(out.w == img.w);
    CHECK(all_in_unit_range(out));
  }
}

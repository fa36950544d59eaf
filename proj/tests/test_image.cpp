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

#include <png.h>

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "percept/errors.hpp"
#include "percept/image.hpp"
#include "percept/png_io.hpp"
#include "percept/synth.hpp"
#include "testutil.hpp"

using namespace percept;
using namespace percept::imaging;
namespace fs = std::filesystem;

namespace {

// 8-bit grayscale png, for the non-RGB error path
void write_gray_png(const std::string& path, int h, int w) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(setjmp(png_jmpbuf(png)) == 0);
  png_init_io(png, fp);
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<std::uint8_t> row(w, 128);
  for (int y = 0; y < h; ++y) png_write_row(png, row.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

TEST_CASE("imaging: byte quantization endpoints and fixpoints") {
  CHECK(quantize_byte(1.0) == 255);
  CHECK(quantize_byte(0.0) == 0);
  // round half away from zero: 0.5 * 255 = 127.5 -> 128
  CHECK(quantize_byte(0.5) == 128);
  CHECK(quantize_byte(1.5) == 255);   // clipped
  CHECK(quantize_byte(-0.2) == 0);    // clipped

  // to_bytes(normalize) is the identity on all 8-bit values
  for (int k = 0; k <= 255; ++k) {
    CHECK(quantize_byte(static_cast<double>(k) / 255.0) == k);
  }

  // quantization fixpoint: to_bytes(load(to_bytes(x))) == to_bytes(x)
  Rng rng(3);
  Image img = testutil::random_image(5, 7, rng);
  const auto once = to_bytes(img);
  const Image reloaded = from_bytes(once.data(), img.h, img.w);
  CHECK(to_bytes(reloaded) == once);
}

TEST_CASE("imaging: validate rejects bad images") {
  Image img(2, 2, 0.5);
  CHECK_NOTHROW(validate(img));
  img.data[0] = 1.5;
  CHECK_THROWS_AS(validate(img), ParamError);
  Image empty;
  CHECK_THROWS_AS(validate(empty), ParamError);
}

TEST_CASE("imaging: png directory dataset loads deterministically") {
  testutil::TmpDir tmp("pngdir");
  Rng rng(17);
  // 10 class folders of 5 png files each
  for (int cls = 0; cls < 10; ++cls) {
    const fs::path dir = fs::path(tmp.dir()) / std::to_string(cls);
    fs::create_directories(dir);
    for (int i = 0; i < 5; ++i) {
      write_png((dir / ("img" + std::to_string(i) + ".png")).string(),
                testutil::random_image(8, 8, rng));
    }
  }

  const auto ds = load_dataset(tmp.dir(), DatasetFormat::kPngDir);
  CHECK(ds.size() == 50);
  CHECK(ds.num_classes == 10);
  CHECK(ds.height() == 8);
  for (int label : ds.labels) {
    CHECK(label >= 0);
    CHECK(label <= 9);
  }

  const auto again = load_dataset(tmp.dir(), DatasetFormat::kPngDir);
  REQUIRE(again.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(again.labels[i] == ds.labels[i]);
    CHECK(again.images[i].data == ds.images[i].data);
  }
}

TEST_CASE("imaging: dataset error paths") {
  CHECK_THROWS_AS(load_dataset("/no/such/path", DatasetFormat::kPngDir),
                  NotFoundError);

  testutil::TmpDir tmp("badpng");
  const fs::path dir = fs::path(tmp.dir()) / "0";
  fs::create_directories(dir);

  SUBCASE("non-RGB file is a FormatError naming the file") {
    write_gray_png((dir / "gray.png").string(), 8, 8);
    try {
      load_dataset(tmp.dir(), DatasetFormat::kPngDir);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("gray.png") != std::string::npos);
    }
  }

  SUBCASE("size-inconsistent file is a FormatError naming the file") {
    Rng rng(5);
    write_png((dir / "a.png").string(), testutil::random_image(8, 8, rng));
    write_png((dir / "b.png").string(), testutil::random_image(16, 16, rng));
    try {
      load_dataset(tmp.dir(), DatasetFormat::kPngDir);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("b.png") != std::string::npos);
    }
  }
}

TEST_CASE("imaging: binary cache round trip is exact") {
  testutil::TmpDir tmp("cache");
  const auto ds = synthetic_dataset(4, 6, 16, 16, 99, Split::kTrain);
  const std::string path = tmp.file("data.bin");
  save_cache(ds, path);

  const auto loaded = load_dataset(path, DatasetFormat::kBinaryCache);
  REQUIRE(loaded.size() == ds.size());
  CHECK(loaded.num_classes == ds.num_classes);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(loaded.labels[i] == ds.labels[i]);
    CHECK(loaded.images[i].data == ds.images[i].data);
  }
  CHECK(fingerprint(loaded) == fingerprint(ds));

  auto tweaked = ds;
  tweaked.labels[0] = (tweaked.labels[0] + 1) % 4;
  CHECK(fingerprint(tweaked) != fingerprint(ds));
}

TEST_CASE("imaging: synthetic dataset is deterministic and in range") {
  const auto a = synthetic_dataset(10, 3, 16, 16, 7, Split::kTrain);
  const auto b = synthetic_dataset(10, 3, 16, 16, 7, Split::kTrain);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.images[i].data == b.images[i].data);
  for (const auto& img : a.images) CHECK_NOTHROW(validate(img));
}

TEST_CASE("imaging: batches copy values and labels") {
  const auto ds = synthetic_dataset(3, 4, 16, 16, 5, Split::kTrain);
  const auto batch = make_batch(ds, {0, 5, 11});
  CHECK(batch.b == 3);
  CHECK(batch.labels[1] == ds.labels[5]);
  const Image img = batch_image(batch, 2);
  CHECK(img.data == ds.images[11].data);
  CHECK_THROWS_AS(make_batch(ds, {}), ParamError);
}

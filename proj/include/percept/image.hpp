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
#ifndef PERCEPT_IMAGE_HPP_
#define PERCEPT_IMAGE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace percept::imaging {

// RGB image, values in [0,1], row-major, channel-last: data[(y*w + x)*3 + c].
struct Image {
  int h = 0;
  int w = 0;
  std::vector<double> data;

  Image() = default;
  Image(int height, int width, double fill = 0.0)
      : h(height), w(width),
        data(static_cast<std::size_t>(height) * width * 3, fill) {}

  double& at(int y, int x, int c) {
    return data[(static_cast<std::size_t>(y) * w + x) * 3 + c];
  }
  double at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * w + x) * 3 + c];
  }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Image& o) const { return h == o.h && w == o.w; }
};

enum class Split { kTrain, kTest };

struct LabeledDataset {
  std::vector<Image> images;
  std::vector<int> labels;
  int num_classes = 0;
  Split split = Split::kTrain;

  std::size_t size() const { return images.size(); }
  int height() const { return images.empty() ? 0 : images.front().h; }
  int width() const { return images.empty() ? 0 : images.front().w; }
};

struct Batch {
  int b = 0;
  int h = 0;
  int w = 0;
  std::vector<double> data;  // (b, h, w, 3)
  std::vector<int> labels;

  const double* image_ptr(int i) const {
    return data.data() + static_cast<std::size_t>(i) * h * w * 3;
  }
  double* image_ptr(int i) {
    return data.data() + static_cast<std::size_t>(i) * h * w * 3;
  }
};

// round half away from zero, the quantization rule used repo-wide
std::uint8_t quantize_byte(double v);

// v -> round(v*255) clipped to [0,255]
std::vector<std::uint8_t> to_bytes(const Image& img);
Image from_bytes(const std::uint8_t* bytes, int h, int w);

// Throws ParamError when any value is outside [0,1] or the shape is invalid.
void validate(const Image& img);

enum class DatasetFormat { kPngDir, kBinaryCache };

// png-dir layout: <path>/<class_id>/<name>.png, 8-bit RGB, all same size.
// Ordering is deterministic (lexicographic by path). Binary cache is the
// little-endian container written by save_cache.
LabeledDataset load_dataset(const std::string& path, DatasetFormat format,
                            Split split = Split::kTrain);

void save_cache(const LabeledDataset& ds, const std::string& path);

// FNV-1a over the quantized payload + labels; identifies a dataset in
// checkpoints and reports.
std::uint64_t fingerprint(const LabeledDataset& ds);

Batch make_batch(const LabeledDataset& ds, const std::vector<std::size_t>& idx);
Image batch_image(const Batch& batch, int i);

}  // namespace percept::imaging

#endif  // PERCEPT_IMAGE_HPP_

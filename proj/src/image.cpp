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

#include "percept/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "percept/errors.hpp"
#include "percept/png_io.hpp"

namespace fs = std::filesystem;

namespace percept::imaging {
namespace {

constexpr char kCacheMagic[8] = {'P', 'C', 'P', 'T', 'D', 'A', 'T', '1'};

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

LabeledDataset load_png_dir(const std::string& path, Split split) {
  LabeledDataset ds;
  ds.split = split;

  std::vector<std::pair<int, std::string>> entries;  // (class_id, file path)
  int max_class = -1;
  for (const auto& cls : fs::directory_iterator(path)) {
    if (!cls.is_directory()) continue;
    int class_id = 0;
    try {
      class_id = std::stoi(cls.path().filename().string());
    } catch (const std::exception&) {
      throw FormatError("dataset: class directory name is not an integer: " +
                        cls.path().string());
    }
    if (class_id < 0)
      throw FormatError("dataset: negative class id: " + cls.path().string());
    max_class = std::max(max_class, class_id);
    for (const auto& f : fs::directory_iterator(cls.path())) {
      if (f.path().extension() == ".png")
        entries.emplace_back(class_id, f.path().string());
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });

  for (const auto& [class_id, file] : entries) {
    Image img = read_png(file);
    if (!ds.images.empty() && !img.same_shape(ds.images.front())) {
      throw FormatError("dataset: size mismatch in " + file + " (" +
                        std::to_string(img.h) + "x" + std::to_string(img.w) +
                        " vs " + std::to_string(ds.images.front().h) + "x" +
                        std::to_string(ds.images.front().w) + ")");
    }
    ds.images.push_back(std::move(img));
    ds.labels.push_back(class_id);
  }
  ds.num_classes = max_class + 1;
  return ds;
}

LabeledDataset load_cache(const std::string& path, Split split) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("dataset: cannot open cache " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kCacheMagic, 8) != 0)
    throw FormatError("dataset: bad cache magic in " + path);
  const std::uint32_t h = read_u32(is);
  const std::uint32_t w = read_u32(is);
  const std::uint32_t count = read_u32(is);
  const std::uint32_t num_classes = read_u32(is);

  LabeledDataset ds;
  ds.split = split;
  ds.num_classes = static_cast<int>(num_classes);
  ds.images.reserve(count);
  ds.labels.reserve(count);

  const std::size_t npix = static_cast<std::size_t>(h) * w * 3;
  std::vector<std::uint8_t> buf(npix);
  for (std::uint32_t i = 0; i < count; ++i) {
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(npix));
    if (!is) throw FormatError("dataset: truncated cache payload in " + path);
    ds.images.push_back(
        from_bytes(buf.data(), static_cast<int>(h), static_cast<int>(w)));
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t label = read_u32(is);
    if (!is) throw FormatError("dataset: truncated label vector in " + path);
    ds.labels.push_back(static_cast<int>(label));
  }
  return ds;
}

}  // namespace

std::uint8_t quantize_byte(double v) {
  double scaled = v * 255.0;
  if (scaled < 0.0) scaled = 0.0;
  if (scaled > 255.0) scaled = 255.0;
  // round half away from zero; values here are >= 0 so this is floor(x + .5)
  return static_cast<std::uint8_t>(std::floor(scaled + 0.5));
}

std::vector<std::uint8_t> to_bytes(const Image& img) {
  std::vector<std::uint8_t> out(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i)
    out[i] = quantize_byte(img.data[i]);
  return out;
}

Image from_bytes(const std::uint8_t* bytes, int h, int w) {
  Image img(h, w);
  const std::size_t n = img.data.size();
  for (std::size_t i = 0; i < n; ++i)
    img.data[i] = static_cast<double>(bytes[i]) / 255.0;
  return img;
}

void validate(const Image& img) {
  if (img.h < 1 || img.w < 1)
    throw ParamError("image: H and W must be >= 1");
  if (img.data.size() != static_cast<std::size_t>(img.h) * img.w * 3)
    throw ShapeError("image: buffer size does not match HxWx3");
  for (double v : img.data) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ParamError("image: value outside [0,1]: " + std::to_string(v));
  }
}

LabeledDataset load_dataset(const std::string& path, DatasetFormat format,
                            Split split) {
  if (!fs::exists(path)) throw NotFoundError("dataset: no such path " + path);
  LabeledDataset ds = format == DatasetFormat::kPngDir
                          ? load_png_dir(path, split)
                          : load_cache(path, split);
  if (ds.images.size() != ds.labels.size())
    throw FormatError("dataset: image/label count mismatch");
  return ds;
}

void save_cache(const LabeledDataset& ds, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOError("dataset: cannot write cache " + path);
  os.write(kCacheMagic, 8);
  write_u32(os, static_cast<std::uint32_t>(ds.height()));
  write_u32(os, static_cast<std::uint32_t>(ds.width()));
  write_u32(os, static_cast<std::uint32_t>(ds.size()));
  write_u32(os, static_cast<std::uint32_t>(ds.num_classes));
  for (const Image& img : ds.images) {
    const auto bytes = to_bytes(img);
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  }
  for (int label : ds.labels)
    write_u32(os, static_cast<std::uint32_t>(label));
  if (!os) throw IOError("dataset: write failed for " + path);
}

std::uint64_t fingerprint(const LabeledDataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (const Image& img : ds.images) {
    for (std::uint8_t b : to_bytes(img)) feed(b);
  }
  for (int label : ds.labels) {
    feed(static_cast<std::uint8_t>(label & 0xff));
    feed(static_cast<std::uint8_t>((label >> 8) & 0xff));
  }
  feed(static_cast<std::uint8_t>(ds.num_classes & 0xff));
  return h;
}

Batch make_batch(const LabeledDataset& ds,
                 const std::vector<std::size_t>& idx) {
  if (idx.empty()) throw ParamError("batch: index list is empty");
  Batch batch;
  batch.b = static_cast<int>(idx.size());
  batch.h = ds.height();
  batch.w = ds.width();
  batch.data.resize(static_cast<std::size_t>(batch.b) * batch.h * batch.w * 3);
  batch.labels.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Image& img = ds.images.at(idx[i]);
    std::copy(img.data.begin(), img.data.end(), batch.image_ptr(static_cast<int>(i)));
    batch.labels[i] = ds.labels.at(idx[i]);
  }
  return batch;
}

Image batch_image(const Batch& batch, int i) {
  Image img(batch.h, batch.w);
  const double* src = batch.image_ptr(i);
  std::copy(src, src + img.data.size(), img.data.begin());
  return img;
}

}  // namespace percept::imaging

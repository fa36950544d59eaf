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

#include "percept/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "percept/errors.hpp"
#include "percept/train.hpp"

namespace percept::models {
namespace {

constexpr char kCkptMagic[8] = {'P', 'C', 'P', 'T', 'C', 'K', 'P', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void write_doubles(std::ostream& os, const double* data, std::size_t n) {
  // x86 is little endian; serialize per value to stay explicit
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &data[i], 8);
    write_u64(os, bits);
  }
}

void read_doubles(std::istream& is, double* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bits = read_u64(is);
    std::memcpy(&data[i], &bits, 8);
  }
}

void write_container(std::ostream& os, nlohmann::json manifest,
                     const std::vector<const Tensor*>& tensors,
                     const std::string& section_name,
                     const std::string& section_bytes) {
  nlohmann::json shapes = nlohmann::json::array();
  for (const Tensor* t : tensors) shapes.push_back({t->c, t->h, t->w});
  manifest["format"] = "pcpt-ckpt-1";
  manifest["tensors"] = shapes;
  manifest["optimizer_defaults"] = optimizer_defaults_json();
  if (!section_name.empty()) {
    manifest["sections"] = nlohmann::json::array(
        {{{"name", section_name}, {"size", section_bytes.size()}}});
  }
  const std::string m = manifest.dump();
  os.write(kCkptMagic, 8);
  write_u64(os, m.size());
  os.write(m.data(), static_cast<std::streamsize>(m.size()));
  for (const Tensor* t : tensors) write_doubles(os, t->ptr(), t->numel());
  if (!section_name.empty())
    os.write(section_bytes.data(),
             static_cast<std::streamsize>(section_bytes.size()));
  if (!os) throw IOError("checkpoint: write failed");
}

nlohmann::json read_manifest(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kCkptMagic, 8) != 0)
    throw FormatError("checkpoint: bad magic");
  const std::uint64_t len = read_u64(is);
  std::string m(len, '\0');
  is.read(m.data(), static_cast<std::streamsize>(len));
  if (!is) throw FormatError("checkpoint: truncated manifest");
  return nlohmann::json::parse(m);
}

void read_tensors(std::istream& is, const nlohmann::json& manifest,
                  const std::vector<Tensor*>& tensors) {
  const auto& shapes = manifest.at("tensors");
  if (shapes.size() != tensors.size())
    throw FormatError("checkpoint: tensor count mismatch");
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const int c = shapes[i][0].get<int>();
    const int h = shapes[i][1].get<int>();
    const int w = shapes[i][2].get<int>();
    if (c != tensors[i]->c || h != tensors[i]->h || w != tensors[i]->w)
      throw FormatError("checkpoint: tensor " + std::to_string(i) +
                        " shape mismatch");
    read_doubles(is, tensors[i]->ptr(), tensors[i]->numel());
  }
  if (!is) throw FormatError("checkpoint: truncated tensor payload");
}

std::string mask_set_bytes(const masks::MaskSet& set) {
  std::ostringstream ss(std::ios::binary);
  masks::save_mask_set_stream(set, ss);
  return ss.str();
}

masks::MaskSet mask_set_from_bytes(const std::string& bytes) {
  std::istringstream ss(bytes, std::ios::binary);
  return masks::load_mask_set_stream(ss);
}

template <typename Fn>
void with_output_file(const std::string& path, Fn fn) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOError("checkpoint: cannot write " + path);
  fn(os);
}

template <typename Fn>
auto with_input_file(const std::string& path, Fn fn) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("checkpoint: cannot open " + path);
  return fn(is);
}

}  // namespace

void save_classifier_stream(std::ostream& os, const Classifier& cls,
                            const nlohmann::json& train_info) {
  nlohmann::json manifest = {
      {"arch", "convnet3"},
      {"arch_params",
       {{"h", cls.input_h()},
        {"w", cls.input_w()},
        {"num_classes", cls.num_classes()},
        {"channels", cls.channels()}}},
      {"train", train_info}};
  write_container(os, manifest, cls.net().param_tensors(), "", "");
}

Classifier load_classifier_stream(std::istream& is) {
  const nlohmann::json manifest = read_manifest(is);
  if (manifest.at("arch") != "convnet3")
    throw FormatError("checkpoint: expected a classifier, found " +
                      manifest.at("arch").get<std::string>());
  const auto& ap = manifest.at("arch_params");
  Rng dummy(0);
  Classifier cls(ap.at("h").get<int>(), ap.at("w").get<int>(),
                 ap.at("num_classes").get<int>(), ap.at("channels").get<int>(),
                 dummy);
  read_tensors(is, manifest, cls.net().param_tensors());
  return cls;
}

void save_classifier(const std::string& path, const Classifier& cls,
                     const nlohmann::json& train_info) {
  with_output_file(path,
                   [&](std::ostream& os) { save_classifier_stream(os, cls, train_info); });
}

Classifier load_classifier(const std::string& path) {
  return with_input_file(
      path, [](std::istream& is) { return load_classifier_stream(is); });
}

void save_inpainter_stream(std::ostream& os, const Inpainter& inp,
                           const masks::MaskSet& set,
                           const nlohmann::json& train_info) {
  nlohmann::json manifest = {
      {"arch", "inpaint-unet-s"},
      {"arch_params",
       {{"h", inp.input_h()},
        {"w", inp.input_w()},
        {"channels", inp.channels()}}},
      {"mask_set",
       {{"grid", set.grid}, {"count", set.count()}, {"seed", set.seed}}},
      {"train", train_info}};
  write_container(os, manifest, inp.param_tensors(), "masks",
                  mask_set_bytes(set));
}

std::pair<Inpainter, masks::MaskSet> load_inpainter_stream(std::istream& is) {
  const nlohmann::json manifest = read_manifest(is);
  if (manifest.at("arch") != "inpaint-unet-s")
    throw FormatError("checkpoint: expected an inpainter, found " +
                      manifest.at("arch").get<std::string>());
  const auto& ap = manifest.at("arch_params");
  Rng dummy(0);
  Inpainter inp(ap.at("h").get<int>(), ap.at("w").get<int>(),
                ap.at("channels").get<int>(), dummy);
  read_tensors(is, manifest, inp.param_tensors());

  const auto& sections = manifest.at("sections");
  if (sections.empty() || sections[0].at("name") != "masks")
    throw FormatError("checkpoint: inpainter is missing its mask section");
  std::string bytes(sections[0].at("size").get<std::size_t>(), '\0');
  is.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!is) throw FormatError("checkpoint: truncated mask section");
  return {std::move(inp), mask_set_from_bytes(bytes)};
}

std::pair<Inpainter, masks::MaskSet> load_inpainter(const std::string& path) {
  return with_input_file(
      path, [](std::istream& is) { return load_inpainter_stream(is); });
}

void save_inpainter(const std::string& path, const Inpainter& inp,
                    const masks::MaskSet& set,
                    const nlohmann::json& train_info) {
  with_output_file(path, [&](std::ostream& os) {
    save_inpainter_stream(os, inp, set, train_info);
  });
}

void save_generator_stream(std::ostream& os, const SrGenerator& gen,
                           const nlohmann::json& train_info) {
  nlohmann::json manifest = {
      {"arch", "srgen-s"},
      {"arch_params",
       {{"h", gen.input_h()},
        {"w", gen.input_w()},
        {"factor", gen.scale_factor()},
        {"channels", gen.channels()}}},
      {"train", train_info}};
  write_container(os, manifest, gen.net().param_tensors(), "", "");
}

SrGenerator load_generator_stream(std::istream& is) {
  const nlohmann::json manifest = read_manifest(is);
  if (manifest.at("arch") != "srgen-s")
    throw FormatError("checkpoint: expected a generator, found " +
                      manifest.at("arch").get<std::string>());
  const auto& ap = manifest.at("arch_params");
  Rng dummy(0);
  SrGenerator gen(ap.at("h").get<int>(), ap.at("w").get<int>(),
                  ap.at("factor").get<int>(), ap.at("channels").get<int>(),
                  dummy);
  read_tensors(is, manifest, gen.net().param_tensors());
  return gen;
}

void save_generator(const std::string& path, const SrGenerator& gen,
                    const nlohmann::json& train_info) {
  with_output_file(path, [&](std::ostream& os) {
    save_generator_stream(os, gen, train_info);
  });
}

SrGenerator load_generator(const std::string& path) {
  return with_input_file(
      path, [](std::istream& is) { return load_generator_stream(is); });
}

nlohmann::json checkpoint_manifest(const std::string& path) {
  return with_input_file(path,
                         [](std::istream& is) { return read_manifest(is); });
}

std::string checkpoint_arch(const std::string& path) {
  return checkpoint_manifest(path).at("arch").get<std::string>();
}

}  // namespace percept::models

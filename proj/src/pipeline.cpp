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

#include "percept/pipeline.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "percept/checkpoint.hpp"
#include "percept/errors.hpp"
#include "percept/kernels.hpp"
#include "percept/resize.hpp"

namespace percept::pipeline {
namespace {

constexpr char kBundleMagic[8] = {'P', 'C', 'P', 'T', 'B', 'D', 'L', '1'};

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

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kIdentity:
      return "identity";
    case Variant::kNsr:
      return "nsr";
    case Variant::kFir:
      return "fir";
  }
  return "identity";
}

Variant variant_from_name(const std::string& name) {
  if (name == "identity") return Variant::kIdentity;
  if (name == "nsr") return Variant::kNsr;
  if (name == "fir") return Variant::kFir;
  throw ParamError("pipeline: unknown variant '" + name + "'");
}

PerceptualPipeline PerceptualPipeline::identity(
    std::shared_ptr<const models::Classifier> classifier) {
  if (!classifier) throw ConfigError("pipeline: classifier is required");
  PerceptualPipeline pp;
  pp.variant_ = Variant::kIdentity;
  pp.h_ = classifier->input_h();
  pp.w_ = classifier->input_w();
  pp.classifier_ = std::move(classifier);
  return pp;
}

PerceptualPipeline PerceptualPipeline::nsr(
    std::shared_ptr<const models::Classifier> classifier,
    std::shared_ptr<const models::Recreator> generator,
    corruption::NoiseSpec noise, int factor) {
  if (!classifier) throw ConfigError("pipeline: classifier is required");
  if (!generator) throw ConfigError("pipeline: nsr needs a generator");
  noise.validate();
  if (factor < 1) throw ConfigError("pipeline: factor must be >= 1");
  if (generator->scale_factor() != factor) {
    throw ConfigError("pipeline: configured factor " + std::to_string(factor) +
                      " does not match the generator's factor " +
                      std::to_string(generator->scale_factor()));
  }

  PerceptualPipeline pp;
  pp.variant_ = Variant::kNsr;
  pp.h_ = classifier->input_h();
  pp.w_ = classifier->input_w();
  pp.factor_ = factor;
  pp.noise_ = std::move(noise);
  pp.classifier_ = std::move(classifier);
  pp.recreator_ = std::move(generator);

  // probe the generator's output shape against the declared factor
  const Image probe = pp.recreator_->predict(Image(pp.h_, pp.w_, 0.0));
  if (probe.h != pp.h_ * factor || probe.w != pp.w_ * factor) {
    throw ConfigError(
        "pipeline: generator output is " + std::to_string(probe.h) + "x" +
        std::to_string(probe.w) + ", expected " +
        std::to_string(pp.h_ * factor) + "x" + std::to_string(pp.w_ * factor));
  }
  return pp;
}

PerceptualPipeline PerceptualPipeline::fir(
    std::shared_ptr<const models::Classifier> classifier,
    std::shared_ptr<const models::Recreator> inpainter,
    masks::MaskSet mask_set) {
  if (!classifier) throw ConfigError("pipeline: classifier is required");
  if (!inpainter) throw ConfigError("pipeline: fir needs an inpainter");
  if (mask_set.count() < 1) throw ConfigError("pipeline: mask set is empty");
  if (mask_set.h != classifier->input_h() ||
      mask_set.w != classifier->input_w()) {
    throw ConfigError("pipeline: mask set is " + std::to_string(mask_set.h) +
                      "x" + std::to_string(mask_set.w) +
                      " but the classifier expects " +
                      std::to_string(classifier->input_h()) + "x" +
                      std::to_string(classifier->input_w()));
  }

  PerceptualPipeline pp;
  pp.variant_ = Variant::kFir;
  pp.h_ = classifier->input_h();
  pp.w_ = classifier->input_w();
  pp.mask_set_ = std::move(mask_set);
  pp.classifier_ = std::move(classifier);
  pp.recreator_ = std::move(inpainter);

  const Image probe = pp.recreator_->predict(Image(pp.h_, pp.w_, 0.0));
  if (probe.h != pp.h_ || probe.w != pp.w_) {
    throw ConfigError("pipeline: inpainter changes the image shape");
  }
  return pp;
}

void PerceptualPipeline::check_image(const Image& img) const {
  if (img.h != h_ || img.w != w_)
    throw ShapeError("pipeline: input is " + std::to_string(img.h) + "x" +
                     std::to_string(img.w) + ", pipeline expects " +
                     std::to_string(h_) + "x" + std::to_string(w_));
}

std::vector<Image> PerceptualPipeline::corrupt(const Image& img,
                                               Rng& rng) const {
  check_image(img);
  switch (variant_) {
    case Variant::kIdentity:
      return {img};
    case Variant::kNsr:
      return {corruption::apply(noise_, img, rng)};
    case Variant::kFir: {
      std::vector<Image> out;
      out.reserve(mask_set_.count());
      for (const auto& mask : mask_set_.masks)
        out.push_back(masks::mask_out(img, mask));
      return out;
    }
  }
  throw ConfigError("pipeline: unhandled variant");
}

Image PerceptualPipeline::recreate_from(
    const std::vector<Image>& corrupted) const {
  switch (variant_) {
    case Variant::kIdentity:
      if (corrupted.size() != 1)
        throw ShapeError("pipeline: identity expects one image");
      return corrupted[0];
    case Variant::kNsr: {
      if (corrupted.size() != 1)
        throw ShapeError("pipeline: nsr expects one noisy image");
      const Image hr = recreator_->predict(corrupted[0]);
      return imaging::bilinear_resize(hr, h_, w_);
    }
    case Variant::kFir: {
      std::vector<Image> parts;
      parts.reserve(corrupted.size());
      for (const Image& masked : corrupted)
        parts.push_back(recreator_->predict(masked));
      return masks::aggregate(parts, mask_set_);
    }
  }
  throw ConfigError("pipeline: unhandled variant");
}

Image PerceptualPipeline::recreate(const Image& img, Rng& rng) const {
  return recreate_from(corrupt(img, rng));
}

std::vector<double> PerceptualPipeline::classify(const Image& img,
                                                 Rng& rng) const {
  return classifier_->probs(recreate(img, rng));
}

int PerceptualPipeline::predict_class(const Image& img, Rng& rng) const {
  const auto p = classify(img, rng);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

bool PerceptualPipeline::stochastic() const {
  return variant_ == Variant::kNsr && noise_.is_stochastic();
}

Image PerceptualPipeline::loss_input_grad(const Image& img, int label,
                                          Rng rng) const {
  check_image(img);
  switch (variant_) {
    case Variant::kIdentity:
      return classifier_->loss_input_grad(img, label);
    case Variant::kNsr: {
      Rng replay = rng;
      const Image noisy = corruption::apply(noise_, img, rng);
      const Image hr = recreator_->predict(noisy);
      const Image rec = imaging::bilinear_resize(hr, h_, w_);
      const Image g_rec = classifier_->loss_input_grad(rec, label);
      const Image g_hr = imaging::bilinear_resize_adjoint(g_rec, hr.h, hr.w);
      const Image g_noisy = recreator_->input_grad(noisy, g_hr);
      return corruption::apply_adjoint(noise_, img, g_noisy, replay);
    }
    case Variant::kFir: {
      std::vector<Image> parts;
      std::vector<Image> masked;
      masked.reserve(mask_set_.count());
      parts.reserve(mask_set_.count());
      for (const auto& mask : mask_set_.masks) {
        masked.push_back(masks::mask_out(img, mask));
        parts.push_back(recreator_->predict(masked.back()));
      }
      const Image rec = masks::aggregate(parts, mask_set_);
      const Image g_rec = classifier_->loss_input_grad(rec, label);

      Image g_x(h_, w_, 0.0);
      for (int k = 0; k < mask_set_.count(); ++k) {
        // the aggregation keeps only mask-owned pixels of part k
        const Image upstream = masks::mask_keep(g_rec, mask_set_.masks[k]);
        const Image g_in = recreator_->input_grad(masked[k], upstream);
        // the masked copy zeroed the mask-owned pixels of the input
        const Image g_kept = masks::mask_out(g_in, mask_set_.masks[k]);
        kernels::active().axpy(1.0, g_kept.data.data(), g_x.data.data(),
                               g_x.data.size());
      }
      return g_x;
    }
  }
  throw ConfigError("pipeline: unhandled variant");
}

PerceptualPipeline PerceptualPipeline::without_corruption() const {
  if (variant_ != Variant::kNsr)
    throw ParamError(
        "pipeline: corruption can only be disabled on the nsr variant");
  PerceptualPipeline pp = *this;
  pp.noise_ = corruption::NoiseSpec::none();
  pp.name_ = name_ + "-sr";
  return pp;
}

nlohmann::json PerceptualPipeline::manifest() const {
  nlohmann::json j = {{"format", "pcpt-bundle-1"},
                      {"name", name_},
                      {"variant", variant_name(variant_)},
                      {"h", h_},
                      {"w", w_}};
  if (variant_ == Variant::kNsr) {
    j["delta"] = noise_.to_json();
    j["factor"] = factor_;
  }
  if (variant_ == Variant::kFir) {
    j["mask_set"] = {{"grid", mask_set_.grid},
                     {"count", mask_set_.count()},
                     {"seed", mask_set_.seed}};
  }
  return j;
}

void PerceptualPipeline::save(const std::string& path) const {
  std::ostringstream cls_bytes(std::ios::binary);
  models::save_classifier_stream(
      cls_bytes, *classifier_, nlohmann::json::object());

  std::ostringstream rec_bytes(std::ios::binary);
  if (variant_ == Variant::kNsr) {
    const auto* gen = dynamic_cast<const models::SrGenerator*>(recreator_.get());
    if (!gen)
      throw ConfigError("pipeline: only trained generators can be persisted");
    models::save_generator_stream(rec_bytes, *gen, nlohmann::json::object());
  } else if (variant_ == Variant::kFir) {
    const auto* inp = dynamic_cast<const models::Inpainter*>(recreator_.get());
    if (!inp)
      throw ConfigError("pipeline: only trained inpainters can be persisted");
    models::save_inpainter_stream(rec_bytes, *inp, mask_set_,
                                  nlohmann::json::object());
  }

  nlohmann::json j = manifest();
  nlohmann::json sections = nlohmann::json::array();
  const std::string cls_str = cls_bytes.str();
  sections.push_back({{"name", "classifier"},
                      {"size", cls_str.size()},
                      {"fnv1a", hex64(fnv1a(cls_str))}});
  const std::string rec_str = rec_bytes.str();
  if (!rec_str.empty()) {
    sections.push_back({{"name", "recreator"},
                        {"size", rec_str.size()},
                        {"fnv1a", hex64(fnv1a(rec_str))}});
  }
  j["sections"] = sections;

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOError("pipeline: cannot write " + path);
  const std::string m = j.dump();
  os.write(kBundleMagic, 8);
  write_u64(os, m.size());
  os.write(m.data(), static_cast<std::streamsize>(m.size()));
  os.write(cls_str.data(), static_cast<std::streamsize>(cls_str.size()));
  os.write(rec_str.data(), static_cast<std::streamsize>(rec_str.size()));
  if (!os) throw IOError("pipeline: write failed for " + path);
}

PerceptualPipeline PerceptualPipeline::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("pipeline: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kBundleMagic, 8) != 0)
    throw FormatError("pipeline: bad bundle magic in " + path);
  const std::uint64_t len = read_u64(is);
  std::string m(len, '\0');
  is.read(m.data(), static_cast<std::streamsize>(len));
  if (!is) throw FormatError("pipeline: truncated manifest in " + path);
  const nlohmann::json j = nlohmann::json::parse(m);

  std::string cls_str, rec_str;
  for (const auto& sec : j.at("sections")) {
    std::string bytes(sec.at("size").get<std::size_t>(), '\0');
    is.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!is) throw FormatError("pipeline: truncated section in " + path);
    const std::string expect = sec.at("fnv1a").get<std::string>();
    if (hex64(fnv1a(bytes)) != expect)
      throw FormatError("pipeline: checksum mismatch for section " +
                        sec.at("name").get<std::string>());
    if (sec.at("name") == "classifier") cls_str = std::move(bytes);
    if (sec.at("name") == "recreator") rec_str = std::move(bytes);
  }

  std::istringstream cls_in(cls_str, std::ios::binary);
  auto classifier = std::make_shared<models::Classifier>(
      models::load_classifier_stream(cls_in));

  const Variant variant = variant_from_name(j.at("variant").get<std::string>());
  PerceptualPipeline pp;
  switch (variant) {
    case Variant::kIdentity:
      pp = identity(std::move(classifier));
      break;
    case Variant::kNsr: {
      std::istringstream rec_in(rec_str, std::ios::binary);
      auto gen = std::make_shared<models::SrGenerator>(
          models::load_generator_stream(rec_in));
      pp = nsr(std::move(classifier), std::move(gen),
               corruption::NoiseSpec::from_json(j.at("delta")),
               j.at("factor").get<int>());
      break;
    }
    case Variant::kFir: {
      std::istringstream rec_in(rec_str, std::ios::binary);
      auto [inp, set] = models::load_inpainter_stream(rec_in);
      pp = fir(std::move(classifier),
               std::make_shared<models::Inpainter>(std::move(inp)),
               std::move(set));
      break;
    }
  }
  pp.set_name(j.value("name", "pipeline"));
  return pp;
}

}  // namespace percept::pipeline

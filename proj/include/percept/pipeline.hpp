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
#ifndef PERCEPT_PIPELINE_HPP_
#define PERCEPT_PIPELINE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "percept/image.hpp"
#include "percept/masks.hpp"
#include "percept/nn.hpp"
#include "percept/noise.hpp"
#include "percept/rng.hpp"

namespace percept::pipeline {

using imaging::Image;

enum class Variant { kIdentity, kNsr, kFir };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Corrupt-recreate-classify wrapper around a classifier. Immutable once
// built; recreate/classify are reentrant given per-call randomness sources.
// The classifier only ever sees the recreated image: the corrupted copies
// returned by corrupt() own their storage, and everything downstream of it
// reads only those copies.
class PerceptualPipeline {
 public:
  static PerceptualPipeline identity(
      std::shared_ptr<const models::Classifier> classifier);
  static PerceptualPipeline nsr(
      std::shared_ptr<const models::Classifier> classifier,
      std::shared_ptr<const models::Recreator> generator,
      corruption::NoiseSpec noise, int factor);
  static PerceptualPipeline fir(
      std::shared_ptr<const models::Classifier> classifier,
      std::shared_ptr<const models::Recreator> inpainter,
      masks::MaskSet mask_set);

  Variant variant() const { return variant_; }
  const corruption::NoiseSpec& noise() const { return noise_; }
  const masks::MaskSet& mask_set() const { return mask_set_; }
  const models::Classifier& classifier() const { return *classifier_; }
  int input_h() const { return h_; }
  int input_w() const { return w_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // corruption stage: one noisy copy (nsr), n masked copies (fir)
  std::vector<Image> corrupt(const Image& img, Rng& rng) const;
  Image recreate_from(const std::vector<Image>& corrupted) const;
  Image recreate(const Image& img, Rng& rng) const;
  std::vector<double> classify(const Image& img, Rng& rng) const;
  int predict_class(const Image& img, Rng& rng) const;

  bool stochastic() const;
  // end-to-end white-box gradient: classifier loss, back through
  // aggregation, recreator and corruption
  Image loss_input_grad(const Image& img, int label, Rng rng) const;

  // the SR ablation: same models, corruption disabled at test time
  PerceptualPipeline without_corruption() const;

  void save(const std::string& path) const;
  static PerceptualPipeline load(const std::string& path);
  nlohmann::json manifest() const;

 private:
  PerceptualPipeline() = default;
  void check_image(const Image& img) const;

  Variant variant_ = Variant::kIdentity;
  std::string name_ = "pipeline";
  int h_ = 0, w_ = 0;
  int factor_ = 1;
  corruption::NoiseSpec noise_ = corruption::NoiseSpec::none();
  masks::MaskSet mask_set_;
  std::shared_ptr<const models::Classifier> classifier_;
  std::shared_ptr<const models::Recreator> recreator_;
};

}  // namespace percept::pipeline

#endif  // PERCEPT_PIPELINE_HPP_

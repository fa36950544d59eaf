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
#ifndef PERCEPT_VICTIMS_HPP_
#define PERCEPT_VICTIMS_HPP_

#include "percept/attacks.hpp"
#include "percept/nn.hpp"
#include "percept/pipeline.hpp"

namespace percept::attacks {

class ClassifierVictim : public Victim {
 public:
  explicit ClassifierVictim(const models::Classifier& cls) : cls_(&cls) {}
  int num_classes() const override { return cls_->num_classes(); }
  std::vector<double> predict(const Image& img) const override {
    return cls_->probs(img);
  }
  bool has_gradient() const override { return true; }
  Image loss_input_grad(const Image& img, int label) const override {
    return cls_->loss_input_grad(img, label);
  }

 private:
  const models::Classifier* cls_;
};

// Binds a (possibly stochastic) pipeline to one evaluation seed: every query
// redraws the same corruption, so the attack optimizes the deterministic
// restriction of the defense.
class PipelineVictim : public Victim {
 public:
  PipelineVictim(const pipeline::PerceptualPipeline& pp,
                 std::uint64_t eval_seed)
      : pp_(&pp), eval_seed_(eval_seed) {}
  int num_classes() const override {
    return pp_->classifier().num_classes();
  }
  std::vector<double> predict(const Image& img) const override {
    Rng rng(eval_seed_);
    return pp_->classify(img, rng);
  }
  bool has_gradient() const override { return true; }
  Image loss_input_grad(const Image& img, int label) const override {
    return pp_->loss_input_grad(img, label, Rng(eval_seed_));
  }

 private:
  const pipeline::PerceptualPipeline* pp_;
  std::uint64_t eval_seed_;
};

}  // namespace percept::attacks

#endif  // PERCEPT_VICTIMS_HPP_

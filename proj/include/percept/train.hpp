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
#ifndef PERCEPT_TRAIN_HPP_
#define PERCEPT_TRAIN_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "percept/image.hpp"
#include "percept/masks.hpp"
#include "percept/nn.hpp"
#include "percept/noise.hpp"
#include "percept/rng.hpp"

namespace percept::models {

using imaging::LabeledDataset;

enum class OptimizerKind { kAdamScheduled, kSgdScheduled };
enum class Augment { kNone, kFlipCrop };

std::string optimizer_name(OptimizerKind kind);
OptimizerKind optimizer_from_name(const std::string& name);

// Piecewise-constant schedules: adam runs [1e-3, 1e-1, 1e-2, 1e-3, 5e-4]
// over five equal-length phases, sgd runs [1e-1, 1e-2, 1e-3] over three.
double lr_schedule(OptimizerKind kind, int epoch, int total_epochs);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  OptimizerKind optimizer = OptimizerKind::kSgdScheduled;
  double label_smoothing = 0.0;
  bool adversarial_fgsm = false;
  double fgsm_eps = 0.0;
  Augment augment = Augment::kNone;
  std::uint64_t seed = 1;
  int channels = 12;  // width of the reference architectures

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

// fixed defaults, recorded in every checkpoint
struct OptimizerDefaults {
  double sgd_momentum = 0.9;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};
nlohmann::json optimizer_defaults_json();

class Optimizer {
 public:
  explicit Optimizer(std::vector<Tensor*> params);
  virtual ~Optimizer() = default;
  virtual void step(const std::vector<Tensor*>& grads, double lr) = 0;

 protected:
  std::vector<Tensor*> params_;
};

class SgdOptimizer : public Optimizer {
 public:
  SgdOptimizer(std::vector<Tensor*> params, double momentum);
  void step(const std::vector<Tensor*>& grads, double lr) override;

 private:
  double momentum_;
  std::vector<Tensor> velocity_;
};

class AdamOptimizer : public Optimizer {
 public:
  AdamOptimizer(std::vector<Tensor*> params, double beta1, double beta2,
                double eps);
  void step(const std::vector<Tensor*>& grads, double lr) override;

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<Tensor> m_, v_;
};

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind,
                                          std::vector<Tensor*> params);

struct TrainLog {
  std::vector<double> epoch_losses;
};

// Batch hook applied before each training step (the recreated-image
// retraining variant plugs a pipeline's recreate map in here).
using Preprocess =
    std::function<imaging::Image(const imaging::Image&, Rng&)>;

Classifier train_classifier(const LabeledDataset& dataset,
                            const TrainConfig& cfg,
                            const Preprocess& preprocess = nullptr,
                            TrainLog* log = nullptr);

// Minimizes mean absolute error between F(x masked by a randomly drawn
// mask of the set) and x.
Inpainter train_inpainter(const LabeledDataset& dataset,
                          const masks::MaskSet& mask_set,
                          const TrainConfig& cfg, TrainLog* log = nullptr);

// Noisy LR -> HR regression; HR targets are bilinear upscales of the clean
// images. adversarial_loss adds a jointly trained discriminator term.
SrGenerator train_superres(const LabeledDataset& dataset, int factor,
                           const corruption::NoiseSpec& noise,
                           const TrainConfig& cfg, bool adversarial_loss,
                           TrainLog* log = nullptr);

// cross-entropy against a smoothed one-hot target, plus its logit gradient
double softmax_cross_entropy(const std::vector<double>& logits, int label,
                             double label_smoothing, int num_classes,
                             std::vector<double>* dlogits);

double dataset_accuracy(const Classifier& cls, const LabeledDataset& ds);

}  // namespace percept::models

#endif  // PERCEPT_TRAIN_HPP_

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

#include "percept/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "percept/errors.hpp"
#include "percept/kernels.hpp"
#include "percept/resize.hpp"

namespace percept::models {
namespace {

constexpr double kAdvLossWeight = 1e-3;  // generator adversarial-loss weight

const OptimizerDefaults kOptDefaults{};

bool finite(double v) { return std::isfinite(v); }

imaging::Image flip_crop_augment(const imaging::Image& img, Rng& rng) {
  imaging::Image work = img;
  if (rng.uniform() < 0.5) {  // horizontal flip
    for (int y = 0; y < work.h; ++y) {
      for (int x = 0; x < work.w / 2; ++x) {
        for (int c = 0; c < 3; ++c)
          std::swap(work.at(y, x, c), work.at(y, work.w - 1 - x, c));
      }
    }
  }
  // pad 2 with edge replication, random crop back to (h, w)
  const int pad = 2;
  const int oy = static_cast<int>(rng.uniform_int(2 * pad + 1)) - pad;
  const int ox = static_cast<int>(rng.uniform_int(2 * pad + 1)) - pad;
  imaging::Image out(work.h, work.w);
  for (int y = 0; y < work.h; ++y) {
    const int sy = std::clamp(y + oy, 0, work.h - 1);
    for (int x = 0; x < work.w; ++x) {
      const int sx = std::clamp(x + ox, 0, work.w - 1);
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = work.at(sy, sx, c);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> epoch_batches(std::size_t n,
                                                    int batch_size, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < n; i += batch_size) {
    batches.emplace_back(order.begin() + i,
                         order.begin() + std::min(n, i + batch_size));
  }
  return batches;
}

void scale_grads(std::vector<std::vector<Tensor>>& grads, double factor) {
  for (auto& layer : grads) {
    for (Tensor& g : layer)
      kernels::active().scale(factor, g.ptr(), g.numel());
  }
}

void zero_grads(std::vector<std::vector<Tensor>>& grads) {
  for (auto& layer : grads) {
    for (Tensor& g : layer) g.zero();
  }
}

std::vector<Tensor*> flatten_grads(std::vector<std::vector<Tensor>>& grads) {
  std::vector<Tensor*> flat;
  for (auto& layer : grads) {
    for (Tensor& g : layer) flat.push_back(&g);
  }
  return flat;
}

}  // namespace

std::string optimizer_name(OptimizerKind kind) {
  return kind == OptimizerKind::kAdamScheduled ? "adam-scheduled"
                                               : "sgd-scheduled";
}

OptimizerKind optimizer_from_name(const std::string& name) {
  if (name == "adam-scheduled") return OptimizerKind::kAdamScheduled;
  if (name == "sgd-scheduled") return OptimizerKind::kSgdScheduled;
  throw ParamError("train: unknown optimizer '" + name + "'");
}

double lr_schedule(OptimizerKind kind, int epoch, int total_epochs) {
  if (total_epochs < 1) throw ParamError("lr_schedule: total_epochs < 1");
  if (epoch < 0 || epoch >= total_epochs)
    throw ParamError("lr_schedule: epoch " + std::to_string(epoch) +
                     " outside [0, " + std::to_string(total_epochs) + ")");
  static const double kAdamRates[5] = {1e-3, 1e-1, 1e-2, 1e-3, 5e-4};
  static const double kSgdRates[3] = {1e-1, 1e-2, 1e-3};
  if (kind == OptimizerKind::kAdamScheduled) {
    const int phase = static_cast<int>(
        (static_cast<long>(epoch) * 5) / total_epochs);
    return kAdamRates[std::min(phase, 4)];
  }
  const int phase =
      static_cast<int>((static_cast<long>(epoch) * 3) / total_epochs);
  return kSgdRates[std::min(phase, 2)];
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ParamError("train: epochs must be >= 1");
  if (batch_size < 1) throw ParamError("train: batch_size must be >= 1");
  if (label_smoothing < 0.0 || label_smoothing >= 1.0)
    throw ParamError("train: label_smoothing must be in [0, 1)");
  if (adversarial_fgsm && fgsm_eps < 0.0)
    throw ParamError("train: fgsm eps must be >= 0");
  if (channels < 1) throw ParamError("train: channels must be >= 1");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"optimizer", optimizer_name(optimizer)},
          {"label_smoothing", label_smoothing},
          {"adversarial", adversarial_fgsm
                              ? nlohmann::json{{"kind", "fgsm"}, {"eps", fgsm_eps}}
                              : nlohmann::json{{"kind", "none"}}},
          {"augment", augment == Augment::kFlipCrop ? "flip-crop" : "none"},
          {"seed", seed},
          {"channels", channels}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig cfg;
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.optimizer = optimizer_from_name(
      j.value("optimizer", optimizer_name(cfg.optimizer)));
  cfg.label_smoothing = j.value("label_smoothing", cfg.label_smoothing);
  if (j.contains("adversarial") &&
      j["adversarial"].value("kind", "none") == std::string("fgsm")) {
    cfg.adversarial_fgsm = true;
    cfg.fgsm_eps = j["adversarial"].value("eps", 0.0);
  }
  cfg.augment = j.value("augment", "none") == std::string("flip-crop")
                    ? Augment::kFlipCrop
                    : Augment::kNone;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.channels = j.value("channels", cfg.channels);
  cfg.validate();
  return cfg;
}

nlohmann::json optimizer_defaults_json() {
  return {{"sgd_momentum", kOptDefaults.sgd_momentum},
          {"adam_beta1", kOptDefaults.adam_beta1},
          {"adam_beta2", kOptDefaults.adam_beta2},
          {"adam_eps", kOptDefaults.adam_eps}};
}

Optimizer::Optimizer(std::vector<Tensor*> params)
    : params_(std::move(params)) {}

SgdOptimizer::SgdOptimizer(std::vector<Tensor*> params, double momentum)
    : Optimizer(std::move(params)), momentum_(momentum) {
  for (Tensor* p : params_) velocity_.push_back(Tensor(p->c, p->h, p->w, 0.0));
}

void SgdOptimizer::step(const std::vector<Tensor*>& grads, double lr) {
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < params_.size(); ++i) {
    k.sgd_step(lr, momentum_, velocity_[i].ptr(), params_[i]->ptr(),
               grads[i]->ptr(), params_[i]->numel());
  }
}

AdamOptimizer::AdamOptimizer(std::vector<Tensor*> params, double beta1,
                             double beta2, double eps)
    : Optimizer(std::move(params)), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (Tensor* p : params_) {
    m_.push_back(Tensor(p->c, p->h, p->w, 0.0));
    v_.push_back(Tensor(p->c, p->h, p->w, 0.0));
  }
}

void AdamOptimizer::step(const std::vector<Tensor*>& grads, double lr) {
  ++t_;
  const double b1t = std::pow(beta1_, static_cast<double>(t_));
  const double b2t = std::pow(beta2_, static_cast<double>(t_));
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < params_.size(); ++i) {
    k.adam_step(lr, beta1_, beta2_, eps_, b1t, b2t, m_[i].ptr(), v_[i].ptr(),
                params_[i]->ptr(), grads[i]->ptr(), params_[i]->numel());
  }
}

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind,
                                          std::vector<Tensor*> params) {
  if (kind == OptimizerKind::kAdamScheduled) {
    return std::make_unique<AdamOptimizer>(std::move(params),
                                           kOptDefaults.adam_beta1,
                                           kOptDefaults.adam_beta2,
                                           kOptDefaults.adam_eps);
  }
  return std::make_unique<SgdOptimizer>(std::move(params),
                                        kOptDefaults.sgd_momentum);
}

double softmax_cross_entropy(const std::vector<double>& logits, int label,
                             double label_smoothing, int num_classes,
                             std::vector<double>* dlogits) {
  const auto p = softmax(logits);
  const double uniform = label_smoothing / num_classes;
  double loss = 0.0;
  if (dlogits) dlogits->assign(num_classes, 0.0);
  for (int c = 0; c < num_classes; ++c) {
    const double target =
        uniform + (c == label ? 1.0 - label_smoothing : 0.0);
    loss -= target * std::log(std::max(p[c], 1e-300));
    if (dlogits) (*dlogits)[c] = p[c] - target;
  }
  return loss;
}

Classifier train_classifier(const LabeledDataset& dataset,
                            const TrainConfig& cfg,
                            const Preprocess& preprocess, TrainLog* log) {
  cfg.validate();
  if (dataset.size() == 0) throw ParamError("train: dataset is empty");

  Rng root(cfg.seed);
  Rng init = root.child("init");
  Classifier cls(dataset.height(), dataset.width(), dataset.num_classes,
                 cfg.channels, init);

  auto grads = cls.net().make_grads();
  auto optimizer = make_optimizer(cfg.optimizer, cls.net().param_tensors());
  auto flat = flatten_grads(grads);

  std::vector<LayerCache> tape;
  std::vector<double> dlogits;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng = root.child("order", static_cast<std::uint64_t>(epoch));
    Rng aug_rng = root.child("augment", static_cast<std::uint64_t>(epoch));
    Rng pre_rng = root.child("preprocess", static_cast<std::uint64_t>(epoch));
    const double lr = lr_schedule(cfg.optimizer, epoch, cfg.epochs);

    double epoch_loss = 0.0;
    std::size_t epoch_samples = 0;

    for (const auto& batch_idx : epoch_batches(dataset.size(), cfg.batch_size,
                                               order_rng)) {
      // interleave clean and FGSM samples so the epsilon-zero batch reduces
      // to exactly the non-adversarial trajectory
      std::vector<std::pair<Tensor, int>> samples;
      samples.reserve(batch_idx.size() * (cfg.adversarial_fgsm ? 2 : 1));
      for (std::size_t idx : batch_idx) {
        imaging::Image img = dataset.images[idx];
        if (cfg.augment == Augment::kFlipCrop)
          img = flip_crop_augment(img, aug_rng);
        if (preprocess) img = preprocess(img, pre_rng);
        const int label = dataset.labels[idx];
        samples.emplace_back(image_to_tensor(img), label);
        if (cfg.adversarial_fgsm) {
          const imaging::Image grad = cls.loss_input_grad(img, label);
          imaging::Image adv(img.h, img.w);
          kernels::active().signed_step(img.data.data(), grad.data.data(),
                                        cfg.fgsm_eps, adv.data.data(),
                                        adv.data.size());
          samples.emplace_back(image_to_tensor(adv), label);
        }
      }

      zero_grads(grads);
      double batch_loss = 0.0;
      for (const auto& [x, label] : samples) {
        const Tensor z = cls.net().forward(x, &tape);
        batch_loss += softmax_cross_entropy(z.data, label,
                                            cfg.label_smoothing,
                                            dataset.num_classes, &dlogits);
        Tensor dz = Tensor::vec(dataset.num_classes);
        dz.data = dlogits;
        cls.net().backward(dz, tape, &grads);
      }
      scale_grads(grads, 1.0 / static_cast<double>(samples.size()));
      optimizer->step(flat, lr);
      epoch_loss += batch_loss;
      epoch_samples += samples.size();
    }

    const double mean_loss = epoch_loss / static_cast<double>(epoch_samples);
    if (!finite(mean_loss))
      throw TrainingDiverged("train_classifier: loss is not finite", epoch);
    if (log) log->epoch_losses.push_back(mean_loss);
  }
  return cls;
}

Inpainter train_inpainter(const LabeledDataset& dataset,
                          const masks::MaskSet& mask_set,
                          const TrainConfig& cfg, TrainLog* log) {
  cfg.validate();
  if (dataset.size() == 0) throw ParamError("train: dataset is empty");
  if (mask_set.h != dataset.height() || mask_set.w != dataset.width())
    throw ParamError("train_inpainter: mask set is " +
                     std::to_string(mask_set.h) + "x" +
                     std::to_string(mask_set.w) + " but dataset is " +
                     std::to_string(dataset.height()) + "x" +
                     std::to_string(dataset.width()));

  Rng root(cfg.seed);
  Rng init = root.child("init");
  Inpainter inp(dataset.height(), dataset.width(), cfg.channels, init);

  auto grads = inp.make_grads();
  auto optimizer = make_optimizer(cfg.optimizer, inp.param_tensors());
  auto flat = flatten_grads(grads);

  Inpainter::Tape tape;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng = root.child("order", static_cast<std::uint64_t>(epoch));
    Rng mask_rng = root.child("mask", static_cast<std::uint64_t>(epoch));
    const double lr = lr_schedule(cfg.optimizer, epoch, cfg.epochs);

    double epoch_loss = 0.0;
    std::size_t epoch_samples = 0;

    for (const auto& batch_idx : epoch_batches(dataset.size(), cfg.batch_size,
                                               order_rng)) {
      zero_grads(grads);
      for (std::size_t idx : batch_idx) {
        const imaging::Image& target = dataset.images[idx];
        const int k = static_cast<int>(
            mask_rng.uniform_int(static_cast<std::uint64_t>(mask_set.count())));
        const imaging::Image masked =
            masks::mask_out(target, mask_set.masks[k]);

        const Tensor x = image_to_tensor(masked);
        const Tensor y = inp.forward(x, &tape);
        const Tensor t = image_to_tensor(target);

        const std::size_t n = y.numel();
        epoch_loss +=
            kernels::active().abs_diff_sum(y.ptr(), t.ptr(), n) /
            static_cast<double>(n);
        Tensor dy(y.c, y.h, y.w);
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double d = y.data[i] - t.data[i];
          dy.data[i] = d > 0.0 ? inv : (d < 0.0 ? -inv : 0.0);
        }
        inp.backward(dy, tape, &grads);
      }
      scale_grads(grads, 1.0 / static_cast<double>(batch_idx.size()));
      optimizer->step(flat, lr);
      epoch_samples += batch_idx.size();
    }

    const double mean_loss = epoch_loss / static_cast<double>(epoch_samples);
    if (!finite(mean_loss))
      throw TrainingDiverged("train_inpainter: loss is not finite", epoch);
    if (log) log->epoch_losses.push_back(mean_loss);
  }
  return inp;
}

SrGenerator train_superres(const LabeledDataset& dataset, int factor,
                           const corruption::NoiseSpec& noise,
                           const TrainConfig& cfg, bool adversarial_loss,
                           TrainLog* log) {
  cfg.validate();
  noise.validate();
  if (dataset.size() == 0) throw ParamError("train: dataset is empty");
  if (factor < 2) throw ParamError("train_superres: factor must be >= 2");

  const int h = dataset.height();
  const int w = dataset.width();

  Rng root(cfg.seed);
  Rng init = root.child("init");
  SrGenerator gen(h, w, factor, cfg.channels, init);

  std::unique_ptr<Discriminator> disc;
  std::unique_ptr<Optimizer> disc_opt;
  std::vector<std::vector<Tensor>> disc_grads;
  std::vector<Tensor*> disc_flat;
  if (adversarial_loss) {
    Rng disc_init = root.child("disc-init");
    disc = std::make_unique<Discriminator>(h * factor, w * factor,
                                           std::max(4, cfg.channels / 2),
                                           disc_init);
    disc_grads = disc->net().make_grads();
    disc_opt = make_optimizer(cfg.optimizer, disc->net().param_tensors());
    disc_flat = flatten_grads(disc_grads);
  }

  // HR ground truth: bilinear upscale of the clean image
  std::vector<Tensor> targets;
  targets.reserve(dataset.size());
  for (const auto& img : dataset.images) {
    targets.push_back(image_to_tensor(
        imaging::bilinear_resize(img, h * factor, w * factor)));
  }

  auto grads = gen.net().make_grads();
  auto optimizer = make_optimizer(cfg.optimizer, gen.net().param_tensors());
  auto flat = flatten_grads(grads);

  std::vector<LayerCache> tape, disc_tape;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng = root.child("order", static_cast<std::uint64_t>(epoch));
    Rng noise_rng = root.child("noise", static_cast<std::uint64_t>(epoch));
    const double lr = lr_schedule(cfg.optimizer, epoch, cfg.epochs);

    double epoch_loss = 0.0;
    std::size_t epoch_samples = 0;

    for (const auto& batch_idx : epoch_batches(dataset.size(), cfg.batch_size,
                                               order_rng)) {
      // corrupted inputs, clean targets
      std::vector<Tensor> inputs;
      inputs.reserve(batch_idx.size());
      for (std::size_t idx : batch_idx) {
        inputs.push_back(image_to_tensor(
            corruption::apply(noise, dataset.images[idx], noise_rng)));
      }

      std::vector<Tensor> fakes(batch_idx.size());

      if (disc) {
        zero_grads(disc_grads);
        for (std::size_t i = 0; i < batch_idx.size(); ++i) {
          fakes[i] = gen.net().forward(inputs[i], nullptr);
          // real target 1
          Tensor z = disc->net().forward(targets[batch_idx[i]], &disc_tape);
          double p = 1.0 / (1.0 + std::exp(-z.data[0]));
          Tensor dz = Tensor::vec(1);
          dz.data[0] = p - 1.0;
          disc->net().backward(dz, disc_tape, &disc_grads);
          // fake target 0
          z = disc->net().forward(fakes[i], &disc_tape);
          p = 1.0 / (1.0 + std::exp(-z.data[0]));
          dz.data[0] = p;
          disc->net().backward(dz, disc_tape, &disc_grads);
        }
        scale_grads(disc_grads, 0.5 / static_cast<double>(batch_idx.size()));
        disc_opt->step(disc_flat, lr);
      }

      zero_grads(grads);
      for (std::size_t i = 0; i < batch_idx.size(); ++i) {
        const Tensor& t = targets[batch_idx[i]];
        const Tensor y = gen.net().forward(inputs[i], &tape);
        const std::size_t n = y.numel();
        epoch_loss += kernels::active().abs_diff_sum(y.ptr(), t.ptr(), n) /
                      static_cast<double>(n);
        Tensor dy(y.c, y.h, y.w);
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
          const double d = y.data[j] - t.data[j];
          dy.data[j] = d > 0.0 ? inv : (d < 0.0 ? -inv : 0.0);
        }
        if (disc) {
          // non-saturating generator term: push D(G(x)) towards "real"
          Tensor z = disc->net().forward(y, &disc_tape);
          const double p = 1.0 / (1.0 + std::exp(-z.data[0]));
          Tensor dz = Tensor::vec(1);
          dz.data[0] = kAdvLossWeight * (p - 1.0);
          const Tensor dadv = disc->net().backward(dz, disc_tape, nullptr);
          kernels::active().axpy(1.0, dadv.ptr(), dy.ptr(), n);
        }
        gen.net().backward(dy, tape, &grads);
      }
      scale_grads(grads, 1.0 / static_cast<double>(batch_idx.size()));
      optimizer->step(flat, lr);
      epoch_samples += batch_idx.size();
    }

    const double mean_loss = epoch_loss / static_cast<double>(epoch_samples);
    if (!finite(mean_loss))
      throw TrainingDiverged("train_superres: loss is not finite", epoch);
    if (log) log->epoch_losses.push_back(mean_loss);
  }
  return gen;
}

double dataset_accuracy(const Classifier& cls, const LabeledDataset& ds) {
  if (ds.size() == 0) throw ParamError("accuracy: dataset is empty");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (cls.predict_class(ds.images[i]) == ds.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

}  // namespace percept::models

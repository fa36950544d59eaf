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
#ifndef PERCEPT_ATTACKS_HPP_
#define PERCEPT_ATTACKS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "percept/de.hpp"
#include "percept/image.hpp"
#include "percept/rng.hpp"

namespace percept::attacks {

using imaging::Image;

// Deterministic classification target. Stochastic defenses are handed to
// attacks wrapped behind a fixed evaluation seed, so predict() is a pure
// function of the image for the duration of one attack.
class Victim {
 public:
  virtual ~Victim() = default;
  virtual int num_classes() const = 0;
  virtual std::vector<double> predict(const Image& img) const = 0;
  virtual bool has_gradient() const { return false; }
  // gradient of the cross-entropy loss wrt input pixels
  virtual Image loss_input_grad(const Image& img, int label) const;

  int predict_class(const Image& img) const;
  double label_confidence(const Image& img, int label) const;
};

enum class AttackKind { kFgsm, kPgd, kPixelDe };

struct AttackSpec {
  AttackKind kind = AttackKind::kFgsm;

  double epsilon = 8.0 / 255.0;  // L-inf budget on [0,1] data
  // pgd
  int steps = 10;
  double step_size = 0.0;  // <= 0 means epsilon / 4
  bool random_start = true;
  // pixel-de
  int pixels = 1;
  DeParams de;

  std::string name() const;
  void validate() const;
  nlohmann::json to_json() const;
  static AttackSpec from_json(const nlohmann::json& j);
  // "fgsm:eps=0.031", "pgd:eps=0.031,steps=10", "pixel:k=1,pop=200,gens=100"
  static AttackSpec parse(const std::string& text);
};

struct AttackResult {
  bool success = false;  // argmax V(x') != label, re-verified
  Image adversarial;
  double linf_norm = 0.0;
  int l0_norm = 0;  // changed-pixel count
  long queries = 0;
  std::vector<double> loss_trace;
};

// x' = clip(x + eps * sign(grad L), 0, 1)
AttackResult fgsm(const Victim& victim, const Image& img, int label,
                  double eps);

// iterated signed steps projected onto the L-inf ball and [0,1]
AttackResult pgd(const Victim& victim, const Image& img, int label, double eps,
                 int steps, double step_size, bool random_start, Rng& rng);

// DE over k (row, col, r, g, b) tuples, minimizing true-class confidence;
// forward queries only
AttackResult pixel_attack(const Victim& victim, const Image& img, int label,
                          int k, const DeParams& params, Rng& rng);

AttackResult run_attack(const Victim& victim, const Image& img, int label,
                        const AttackSpec& spec, Rng& rng);

}  // namespace percept::attacks

#endif  // PERCEPT_ATTACKS_HPP_

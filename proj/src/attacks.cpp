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

#include "percept/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "percept/errors.hpp"
#include "percept/kernels.hpp"

namespace percept::attacks {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double linf(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::fabs(a.data[i] - b.data[i]));
  return m;
}

int l0_pixels(const Image& a, const Image& b) {
  int count = 0;
  for (int y = 0; y < a.h; ++y) {
    for (int x = 0; x < a.w; ++x) {
      for (int c = 0; c < 3; ++c) {
        if (a.at(y, x, c) != b.at(y, x, c)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

double ce_loss(const std::vector<double>& probs, int label) {
  return -std::log(std::max(probs[label], 1e-300));
}

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParamError("attack: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return kv;
}

}  // namespace

Image Victim::loss_input_grad(const Image&, int) const {
  throw CapabilityError("victim: no gradient oracle available");
}

int Victim::predict_class(const Image& img) const {
  const auto p = predict(img);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double Victim::label_confidence(const Image& img, int label) const {
  return predict(img)[label];
}

std::string AttackSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case AttackKind::kFgsm:
      os << "fgsm-eps" << epsilon;
      break;
    case AttackKind::kPgd:
      os << "pgd-eps" << epsilon << "-s" << steps;
      break;
    case AttackKind::kPixelDe:
      os << pixels << "px";
      break;
  }
  return os.str();
}

void AttackSpec::validate() const {
  if (epsilon < 0.0) throw ParamError("attack: epsilon must be >= 0");
  if (kind == AttackKind::kPgd && steps < 1)
    throw ParamError("attack: pgd needs steps >= 1");
  if (kind == AttackKind::kPixelDe) {
    if (pixels < 0) throw ParamError("attack: pixel count must be >= 0");
    if (de.population < 4) throw ParamError("attack: de population >= 4");
  }
}

nlohmann::json AttackSpec::to_json() const {
  switch (kind) {
    case AttackKind::kFgsm:
      return {{"kind", "fgsm"}, {"eps", epsilon}};
    case AttackKind::kPgd:
      return {{"kind", "pgd"},
              {"eps", epsilon},
              {"steps", steps},
              {"step_size", step_size},
              {"random_start", random_start}};
    case AttackKind::kPixelDe:
      return {{"kind", "pixel"},
              {"k", pixels},
              {"population", de.population},
              {"weight", de.weight},
              {"crossover", de.crossover},
              {"generations", de.max_generations}};
  }
  throw ParamError("attack: unhandled kind");
}

AttackSpec AttackSpec::from_json(const nlohmann::json& j) {
  AttackSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fgsm") {
    spec.kind = AttackKind::kFgsm;
    spec.epsilon = j.value("eps", spec.epsilon);
  } else if (kind == "pgd") {
    spec.kind = AttackKind::kPgd;
    spec.epsilon = j.value("eps", spec.epsilon);
    spec.steps = j.value("steps", spec.steps);
    spec.step_size = j.value("step_size", spec.step_size);
    spec.random_start = j.value("random_start", spec.random_start);
  } else if (kind == "pixel") {
    spec.kind = AttackKind::kPixelDe;
    spec.pixels = j.value("k", spec.pixels);
    spec.de.population = j.value("population", spec.de.population);
    spec.de.weight = j.value("weight", spec.de.weight);
    spec.de.crossover = j.value("crossover", spec.de.crossover);
    spec.de.max_generations = j.value("generations", spec.de.max_generations);
  } else {
    throw ParamError("attack: unknown kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

AttackSpec AttackSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  auto kv = colon == std::string::npos
                ? std::map<std::string, double>{}
                : parse_kv(text.substr(colon + 1));
  nlohmann::json j = {{"kind", kind == "pixel" ? "pixel" : kind}};
  for (const auto& [key, value] : kv) {
    if (key == "eps" || key == "weight" || key == "crossover" ||
        key == "step_size") {
      j[key] = value;
    } else if (key == "k" || key == "steps" || key == "population" ||
               key == "pop" || key == "generations" || key == "gens") {
      const std::string canonical = key == "pop" ? "population"
                                    : key == "gens" ? "generations"
                                                    : key;
      j[canonical] = static_cast<int>(value);
    } else if (key == "random_start") {
      j[key] = value != 0.0;
    } else {
      throw ParamError("attack: unknown parameter '" + key + "'");
    }
  }
  return from_json(j);
}

AttackResult fgsm(const Victim& victim, const Image& img, int label,
                  double eps) {
  if (eps < 0.0) throw ParamError("fgsm: epsilon must be >= 0");
  AttackResult res;
  res.queries = 1;  // the gradient oracle runs one forward internally
  const Image grad = victim.loss_input_grad(img, label);

  Image adv(img.h, img.w);
  kernels::active().signed_step(img.data.data(), grad.data.data(), eps,
                                adv.data.data(), adv.data.size());

  const auto p = victim.predict(adv);
  ++res.queries;
  res.success =
      static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()) !=
      label;
  res.loss_trace.push_back(ce_loss(p, label));
  res.linf_norm = linf(adv, img);
  res.l0_norm = l0_pixels(adv, img);
  res.adversarial = std::move(adv);
  return res;
}

AttackResult pgd(const Victim& victim, const Image& img, int label, double eps,
                 int steps, double step_size, bool random_start, Rng& rng) {
  if (eps < 0.0) throw ParamError("pgd: epsilon must be >= 0");
  if (steps < 1) throw ParamError("pgd: steps must be >= 1");
  if (step_size <= 0.0) step_size = eps / 4.0;

  AttackResult res;
  Image x = img;
  if (random_start) {
    for (std::size_t i = 0; i < x.data.size(); ++i)
      x.data[i] = clamp01(img.data[i] + rng.uniform(-eps, eps));
  }

  Image stepped(img.h, img.w);
  for (int s = 0; s < steps; ++s) {
    const Image grad = victim.loss_input_grad(x, label);
    ++res.queries;
    kernels::active().signed_step(x.data.data(), grad.data.data(), step_size,
                                  stepped.data.data(), stepped.data.size());
    // project back into the L-inf ball around the original
    for (std::size_t i = 0; i < x.data.size(); ++i) {
      x.data[i] = std::clamp(stepped.data[i], img.data[i] - eps,
                             img.data[i] + eps);
    }
  }

  const auto p = victim.predict(x);
  ++res.queries;
  res.success =
      static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()) !=
      label;
  res.loss_trace.push_back(ce_loss(p, label));
  res.linf_norm = linf(x, img);
  res.l0_norm = l0_pixels(x, img);
  res.adversarial = std::move(x);
  return res;
}

AttackResult pixel_attack(const Victim& victim, const Image& img, int label,
                          int k, const DeParams& params, Rng& rng) {
  if (k < 0) throw ParamError("pixel: k must be >= 0");

  AttackResult res;
  if (k == 0) {
    const auto p = victim.predict(img);
    res.queries = 1;
    res.success =
        static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()) !=
        label;
    res.loss_trace.push_back(ce_loss(p, label));
    res.adversarial = img;
    return res;
  }

  auto apply_candidate = [&](const std::vector<double>& cand) {
    Image out = img;
    for (int i = 0; i < k; ++i) {
      const int row = std::clamp(
          static_cast<int>(std::floor(cand[i * 5 + 0])), 0, img.h - 1);
      const int col = std::clamp(
          static_cast<int>(std::floor(cand[i * 5 + 1])), 0, img.w - 1);
      out.at(row, col, 0) = clamp01(cand[i * 5 + 2]);
      out.at(row, col, 1) = clamp01(cand[i * 5 + 3]);
      out.at(row, col, 2) = clamp01(cand[i * 5 + 4]);
    }
    return out;
  };

  long queries = 0;
  bool found = false;
  std::vector<double> found_candidate;
  auto fitness = [&](const std::vector<double>& cand) {
    const Image candidate = apply_candidate(cand);
    const auto p = victim.predict(candidate);
    ++queries;
    const int pred =
        static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    if (pred != label && !found) {
      found = true;
      found_candidate = cand;
    }
    return p[label];  // true-class confidence, minimized
  };

  std::vector<std::pair<double, double>> bounds;
  bounds.reserve(static_cast<std::size_t>(k) * 5);
  for (int i = 0; i < k; ++i) {
    // coordinates live on [0, dim) and are floored to a pixel index
    bounds.emplace_back(0.0, std::nextafter(static_cast<double>(img.h), 0.0));
    bounds.emplace_back(0.0, std::nextafter(static_cast<double>(img.w), 0.0));
    bounds.emplace_back(0.0, 1.0);
    bounds.emplace_back(0.0, 1.0);
    bounds.emplace_back(0.0, 1.0);
  }

  const DeResult de = de_optimize(fitness, bounds, params, rng,
                                  [&found]() { return found; });

  const Image adv =
      apply_candidate(found ? found_candidate : de.best);
  const auto p = victim.predict(adv);
  ++queries;
  res.queries = queries;
  res.success =
      static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()) !=
      label;
  res.loss_trace = de.trace;
  res.loss_trace.push_back(ce_loss(p, label));
  res.linf_norm = linf(adv, img);
  res.l0_norm = l0_pixels(adv, img);
  res.adversarial = adv;
  return res;
}

AttackResult run_attack(const Victim& victim, const Image& img, int label,
                        const AttackSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.kind) {
    case AttackKind::kFgsm:
      return fgsm(victim, img, label, spec.epsilon);
    case AttackKind::kPgd:
      return pgd(victim, img, label, spec.epsilon, spec.steps, spec.step_size,
                 spec.random_start, rng);
    case AttackKind::kPixelDe:
      return pixel_attack(victim, img, label, spec.pixels, spec.de, rng);
  }
  throw ParamError("attack: unhandled kind");
}

}  // namespace percept::attacks

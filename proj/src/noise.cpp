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

#include "percept/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "percept/errors.hpp"
#include "percept/jpeg_io.hpp"
#include "percept/kernels.hpp"
#include "percept/resize.hpp"

namespace percept::corruption {
namespace {

// round half away from zero
double round_hafz(double v) {
  return v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5);
}

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParamError("noise: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key,
            double def) {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  const double v = it->second;
  kv.erase(it);
  return v;
}

NoiseSpec parse_one(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  auto kv = colon == std::string::npos
                ? std::map<std::string, double>{}
                : parse_kv(text.substr(colon + 1));
  NoiseSpec spec;
  if (kind == "gaussian") {
    spec = NoiseSpec::gaussian(take(kv, "mean", 0.0), take(kv, "var", 0.0));
  } else if (kind == "panda") {
    spec = NoiseSpec::panda(take(kv, "alpha", 0.0), take(kv, "beta", 0.0));
  } else if (kind == "colordepth") {
    spec = NoiseSpec::color_depth(static_cast<int>(take(kv, "bits", 8.0)));
  } else if (kind == "resize") {
    spec = NoiseSpec::resize(take(kv, "factor", 1.0));
  } else if (kind == "none") {
    spec = NoiseSpec::none();
  } else {
    throw ParamError("noise: unknown kind '" + kind + "'");
  }
  if (!kv.empty())
    throw ParamError("noise: unknown parameter '" + kv.begin()->first +
                     "' for kind '" + kind + "'");
  return spec;
}

}  // namespace

void NoiseSpec::validate() const {
  switch (kind) {
    case NoiseKind::kGaussian:
      if (variance < 0.0) throw ParamError("gaussian: variance must be >= 0");
      break;
    case NoiseKind::kPanda:
      if (alpha < 0.0 || beta < 0.0)
        throw ParamError("panda: probabilities must be >= 0");
      if (alpha + beta > 1.0)
        throw ParamError("panda: alpha + beta must be <= 1");
      break;
    case NoiseKind::kColorDepth:
      if (bits < 1 || bits > 8)
        throw ParamError("colordepth: bits must be in [1, 8]");
      break;
    case NoiseKind::kResize:
      if (factor < 1.0) throw ParamError("resize: factor must be >= 1");
      break;
    case NoiseKind::kCompose:
      if (parts.empty()) throw ParamError("compose: needs at least one part");
      for (const auto& p : parts) p.validate();
      break;
  }
}

bool NoiseSpec::is_stochastic() const {
  switch (kind) {
    case NoiseKind::kGaussian:
      return variance > 0.0;
    case NoiseKind::kPanda:
      return alpha > 0.0 || beta > 0.0;
    case NoiseKind::kCompose:
      return std::any_of(parts.begin(), parts.end(),
                         [](const NoiseSpec& p) { return p.is_stochastic(); });
    default:
      return false;
  }
}

NoiseSpec NoiseSpec::gaussian(double mean, double variance) {
  NoiseSpec s;
  s.kind = NoiseKind::kGaussian;
  s.mean = mean;
  s.variance = variance;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::panda(double alpha, double beta) {
  NoiseSpec s;
  s.kind = NoiseKind::kPanda;
  s.alpha = alpha;
  s.beta = beta;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::color_depth(int bits) {
  NoiseSpec s;
  s.kind = NoiseKind::kColorDepth;
  s.bits = bits;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::resize(double factor) {
  NoiseSpec s;
  s.kind = NoiseKind::kResize;
  s.factor = factor;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::compose(std::vector<NoiseSpec> parts) {
  NoiseSpec s;
  s.kind = NoiseKind::kCompose;
  s.parts = std::move(parts);
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  std::vector<NoiseSpec> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) parts.push_back(parse_one(item));
  if (parts.empty()) throw ParamError("noise: empty spec string");
  if (parts.size() == 1) return parts.front();
  return compose(std::move(parts));
}

std::string NoiseSpec::str() const {
  std::ostringstream os;
  switch (kind) {
    case NoiseKind::kGaussian:
      os << "gaussian:mean=" << mean << ",var=" << variance;
      break;
    case NoiseKind::kPanda:
      os << "panda:alpha=" << alpha << ",beta=" << beta;
      break;
    case NoiseKind::kColorDepth:
      os << "colordepth:bits=" << bits;
      break;
    case NoiseKind::kResize:
      os << "resize:factor=" << factor;
      break;
    case NoiseKind::kCompose:
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << "+";
        os << parts[i].str();
      }
      break;
  }
  return os.str();
}

nlohmann::json NoiseSpec::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case NoiseKind::kGaussian:
      j = {{"kind", "gaussian"}, {"mean", mean}, {"var", variance}};
      break;
    case NoiseKind::kPanda:
      j = {{"kind", "panda"}, {"alpha", alpha}, {"beta", beta}};
      break;
    case NoiseKind::kColorDepth:
      j = {{"kind", "colordepth"}, {"bits", bits}};
      break;
    case NoiseKind::kResize:
      j = {{"kind", "resize"}, {"factor", factor}};
      break;
    case NoiseKind::kCompose: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& p : parts) arr.push_back(p.to_json());
      j = {{"kind", "compose"}, {"parts", arr}};
      break;
    }
  }
  return j;
}

NoiseSpec NoiseSpec::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian")
    return gaussian(j.value("mean", 0.0), j.value("var", 0.0));
  if (kind == "panda")
    return panda(j.value("alpha", 0.0), j.value("beta", 0.0));
  if (kind == "colordepth") return color_depth(j.value("bits", 8));
  if (kind == "resize") return resize(j.value("factor", 1.0));
  if (kind == "compose") {
    std::vector<NoiseSpec> parts;
    for (const auto& p : j.at("parts")) parts.push_back(from_json(p));
    return compose(std::move(parts));
  }
  throw ParamError("noise: unknown kind in json '" + kind + "'");
}

Image gaussian_noise(const Image& img, double mean, double variance,
                     Rng& rng) {
  if (variance < 0.0) throw ParamError("gaussian: variance must be >= 0");
  Image out = img;
  if (variance == 0.0 && mean == 0.0) return out;
  const double stddev = std::sqrt(variance);
  for (double& v : out.data) v += rng.normal(mean, stddev);
  kernels::active().clamp01(out.data.data(), out.data.size());
  return out;
}

Image panda_noise(const Image& img, double alpha, double beta, Rng& rng) {
  if (alpha < 0.0 || beta < 0.0)
    throw ParamError("panda: probabilities must be >= 0");
  if (alpha + beta > 1.0) throw ParamError("panda: alpha + beta must be <= 1");
  Image out = img;
  for (int y = 0; y < out.h; ++y) {
    for (int x = 0; x < out.w; ++x) {
      const double u = rng.uniform();
      if (u < alpha) {
        out.at(y, x, 0) = out.at(y, x, 1) = out.at(y, x, 2) = 1.0;
      } else if (u < alpha + beta) {
        out.at(y, x, 0) = out.at(y, x, 1) = out.at(y, x, 2) = 0.0;
      }
    }
  }
  return out;
}

Image color_depth(const Image& img, int bits) {
  if (bits < 1 || bits > 8)
    throw ParamError("colordepth: bits must be in [1, 8]");
  const double levels = static_cast<double>((1 << bits) - 1);
  Image out = img;
  for (double& v : out.data) v = round_hafz(v * levels) / levels;
  return out;
}

Image resize_noise(const Image& img, double factor) {
  if (factor < 1.0) throw ParamError("resize: factor must be >= 1");
  if (factor == 1.0) return img;
  const double dh = img.h / factor;
  const double dw = img.w / factor;
  const int down_h = static_cast<int>(round_hafz(dh));
  const int down_w = static_cast<int>(round_hafz(dw));
  if (std::fabs(dh - down_h) > 1e-9 || std::fabs(dw - down_w) > 1e-9)
    throw ParamError("resize: factor " + std::to_string(factor) +
                     " does not divide " + std::to_string(img.h) + "x" +
                     std::to_string(img.w) + " into integer dimensions");
  Image down = imaging::bilinear_resize(img, down_h, down_w);
  return imaging::bilinear_resize(down, img.h, img.w);
}

Image compose(const Image& img, const std::vector<NoiseSpec>& specs,
              Rng& rng) {
  if (specs.empty()) throw ParamError("compose: needs at least one part");
  Image cur = img;
  for (const auto& spec : specs) cur = apply(spec, cur, rng);
  return cur;
}

Image apply(const NoiseSpec& spec, const Image& img, Rng& rng) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::kGaussian:
      return gaussian_noise(img, spec.mean, spec.variance, rng);
    case NoiseKind::kPanda:
      return panda_noise(img, spec.alpha, spec.beta, rng);
    case NoiseKind::kColorDepth:
      return color_depth(img, spec.bits);
    case NoiseKind::kResize:
      return resize_noise(img, spec.factor);
    case NoiseKind::kCompose:
      return compose(img, spec.parts, rng);
  }
  throw ParamError("noise: unhandled kind");
}

Image median_smooth(const Image& img, int window) {
  if (window < 1 || window % 2 == 0)
    throw ParamError("median: window must be odd and >= 1");
  if (window == 1) return img;
  const int r = window / 2;
  Image out(img.h, img.w);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(window) * window);
  for (int y = 0; y < img.h; ++y) {
    for (int x = 0; x < img.w; ++x) {
      for (int c = 0; c < 3; ++c) {
        vals.clear();
        for (int dy = -r; dy <= r; ++dy) {
          const int yy = std::clamp(y + dy, 0, img.h - 1);
          for (int dx = -r; dx <= r; ++dx) {
            const int xx = std::clamp(x + dx, 0, img.w - 1);
            vals.push_back(img.at(yy, xx, c));
          }
        }
        auto mid = vals.begin() + vals.size() / 2;
        std::nth_element(vals.begin(), mid, vals.end());
        out.at(y, x, c) = *mid;
      }
    }
  }
  return out;
}

Image jpeg_defense(const Image& img, int quality) {
  if (quality < 1 || quality > 100)
    throw ParamError("jpeg: quality must be in [1, 100]");
  return imaging::decode_jpeg(imaging::encode_jpeg(img, quality));
}

Image apply_adjoint(const NoiseSpec& spec, const Image& img,
                    const Image& upstream, Rng& rng) {
  spec.validate();
  if (!img.same_shape(upstream))
    throw ShapeError("noise adjoint: upstream shape mismatch");
  switch (spec.kind) {
    case NoiseKind::kGaussian: {
      Image out = upstream;
      if (spec.variance == 0.0 && spec.mean == 0.0) return out;
      const double stddev = std::sqrt(spec.variance);
      // clip is active (zero grad) where the noisy value leaves [0,1]
      for (std::size_t i = 0; i < img.data.size(); ++i) {
        const double noisy = img.data[i] + rng.normal(spec.mean, stddev);
        if (noisy < 0.0 || noisy > 1.0) out.data[i] = 0.0;
      }
      return out;
    }
    case NoiseKind::kPanda: {
      Image out = upstream;
      for (int y = 0; y < img.h; ++y) {
        for (int x = 0; x < img.w; ++x) {
          const double u = rng.uniform();
          if (u < spec.alpha + spec.beta) {
            out.at(y, x, 0) = out.at(y, x, 1) = out.at(y, x, 2) = 0.0;
          }
        }
      }
      return out;
    }
    case NoiseKind::kColorDepth:
      return Image(img.h, img.w, 0.0);
    case NoiseKind::kResize: {
      if (spec.factor == 1.0) return upstream;
      const int down_h = static_cast<int>(round_hafz(img.h / spec.factor));
      const int down_w = static_cast<int>(round_hafz(img.w / spec.factor));
      const Image g_mid =
          imaging::bilinear_resize_adjoint(upstream, down_h, down_w);
      return imaging::bilinear_resize_adjoint(g_mid, img.h, img.w);
    }
    case NoiseKind::kCompose: {
      // replay the forward chain to recover stage inputs and rng states
      std::vector<Image> inputs;
      std::vector<Rng> stage_rngs;
      Image cur = img;
      for (const auto& part : spec.parts) {
        inputs.push_back(cur);
        stage_rngs.push_back(rng);
        cur = apply(part, cur, rng);
      }
      Image g = upstream;
      for (std::size_t k = spec.parts.size(); k-- > 0;) {
        Rng replay = stage_rngs[k];
        g = apply_adjoint(spec.parts[k], inputs[k], g, replay);
      }
      return g;
    }
  }
  throw ParamError("noise adjoint: unhandled kind");
}

}  // namespace percept::corruption

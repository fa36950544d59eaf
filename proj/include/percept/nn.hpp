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
#ifndef PERCEPT_NN_HPP_
#define PERCEPT_NN_HPP_

#include <memory>
#include <string>
#include <vector>

#include "percept/image.hpp"
#include "percept/rng.hpp"
#include "percept/tensor.hpp"

namespace percept::models {

using imaging::Batch;
using imaging::Image;

// Saved forward state for one layer (single sample). Layers keep no mutable
// state of their own, so trained nets are safe for concurrent inference.
struct LayerCache {
  Tensor in;
  Tensor out;
};

class Layer {
 public:
  virtual ~Layer() = default;
  // cache may be null for inference-only forwards
  virtual Tensor forward(const Tensor& x, LayerCache* cache) const = 0;
  // Returns grad wrt input; accumulates parameter grads into *grads (aligned
  // with params()) when grads is non-null.
  virtual Tensor backward(const Tensor& dy, const LayerCache& cache,
                          std::vector<Tensor>* grads) const = 0;
  virtual std::vector<Tensor*> params() { return {}; }
  virtual std::vector<const Tensor*> params() const { return {}; }
  virtual std::string kind() const = 0;
};

class Conv2d : public Layer {
 public:
  Conv2d(int cin, int cout, int ksize, int stride, int pad, Rng& rng);
  Tensor forward(const Tensor& x, LayerCache* cache) const override;
  Tensor backward(const Tensor& dy, const LayerCache& cache,
                  std::vector<Tensor>* grads) const override;
  std::vector<Tensor*> params() override { return {&weight_, &bias_}; }
  std::vector<const Tensor*> params() const override {
    return {&weight_, &bias_};
  }
  std::string kind() const override { return "conv2d"; }

  int cin() const { return cin_; }
  int cout() const { return cout_; }

 private:
  int cin_, cout_, ksize_, stride_, pad_;
  Tensor weight_;  // (cout, cin*k*k)
  Tensor bias_;    // (cout)
};

class Relu : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache* cache) const override;
  Tensor backward(const Tensor& dy, const LayerCache& cache,
                  std::vector<Tensor>* grads) const override;
  std::string kind() const override { return "relu"; }
};

class Sigmoid : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache* cache) const override;
  Tensor backward(const Tensor& dy, const LayerCache& cache,
                  std::vector<Tensor>* grads) const override;
  std::string kind() const override { return "sigmoid"; }
};

class Dense : public Layer {
 public:
  Dense(int in, int out, Rng& rng);
  Tensor forward(const Tensor& x, LayerCache* cache) const override;
  Tensor backward(const Tensor& dy, const LayerCache& cache,
                  std::vector<Tensor>* grads) const override;
  std::vector<Tensor*> params() override { return {&weight_, &bias_}; }
  std::vector<const Tensor*> params() const override {
    return {&weight_, &bias_};
  }
  std::string kind() const override { return "dense"; }

 private:
  int in_, out_;
  Tensor weight_;  // (out, in)
  Tensor bias_;    // (out)
};

class UpsampleNearest : public Layer {
 public:
  explicit UpsampleNearest(int factor);
  Tensor forward(const Tensor& x, LayerCache* cache) const override;
  Tensor backward(const Tensor& dy, const LayerCache& cache,
                  std::vector<Tensor>* grads) const override;
  std::string kind() const override { return "upsample"; }
  int factor() const { return factor_; }

 private:
  int factor_;
};

// Per-sample forward/backward tape over a layer stack.
class Sequential {
 public:
  void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }
  std::size_t depth() const { return layers_.size(); }
  Layer& layer(std::size_t i) { return *layers_[i]; }

  Tensor forward(const Tensor& x, std::vector<LayerCache>* tape) const;
  // grads, when non-null, must have one slot per layer (see make_grads)
  Tensor backward(const Tensor& dy, const std::vector<LayerCache>& tape,
                  std::vector<std::vector<Tensor>>* grads) const;

  std::vector<std::vector<Tensor>> make_grads() const;
  void collect(std::vector<Tensor*>& params,
               std::vector<std::vector<Tensor>>& grads,
               std::vector<Tensor*>& flat_grads);
  std::vector<Tensor*> param_tensors();
  std::vector<const Tensor*> param_tensors() const;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

std::vector<double> softmax(const std::vector<double>& logits);

// Input-recreation model surface shared by the pipelines: inpainters keep
// (H, W), super-resolution maps to (sH, sW). predict output is always [0,1].
class Recreator {
 public:
  virtual ~Recreator() = default;
  virtual std::string kind() const = 0;
  virtual Image predict(const Image& img) const = 0;
  // J^T * upstream, for white-box attacks through a pipeline. upstream has
  // predict's output shape, result has the input's.
  virtual Image input_grad(const Image& img, const Image& upstream) const = 0;
  virtual int scale_factor() const { return 1; }
};

// "convnet3": three conv blocks (stride-2 downsamples) + dense head.
class Classifier {
 public:
  Classifier(int h, int w, int num_classes, int channels, Rng& rng);

  int num_classes() const { return num_classes_; }
  int input_h() const { return h_; }
  int input_w() const { return w_; }
  int channels() const { return channels_; }

  std::vector<double> probs(const Image& img) const;
  std::vector<std::vector<double>> probs_batch(const Batch& batch) const;
  int predict_class(const Image& img) const;

  // d(cross-entropy)/d(input pixels), the white-box gradient oracle
  Image loss_input_grad(const Image& img, int label) const;

  Sequential& net() { return net_; }
  const Sequential& net() const { return net_; }

 private:
  Tensor logits(const Tensor& x, std::vector<LayerCache>* tape) const;
  int h_, w_, num_classes_, channels_;
  Sequential net_;
  friend class ClassifierOps;
};

// "inpaint-unet-s": encoder/decoder with one skip connection; keeps (H, W).
class Inpainter : public Recreator {
 public:
  Inpainter(int h, int w, int channels, Rng& rng);
  std::string kind() const override { return "inpainter"; }
  Image predict(const Image& img) const override;
  Image input_grad(const Image& img, const Image& upstream) const override;

  int input_h() const { return h_; }
  int input_w() const { return w_; }
  int channels() const { return channels_; }

  struct Tape {
    LayerCache e0, r0, e1, r1, e2, r2, u0, d0, r3, d1, r4, d2, s0;
    Tensor e0_act;  // post-relu encoder activation reused by the skip
  };
  Tensor forward(const Tensor& x, Tape* tape) const;
  Tensor backward(const Tensor& dy, const Tape& tape,
                  std::vector<std::vector<Tensor>>* grads) const;

  std::vector<Tensor*> param_tensors();
  std::vector<const Tensor*> param_tensors() const;
  std::vector<std::vector<Tensor>> make_grads() const;

 private:
  int h_, w_, channels_;
  // encoder: e0 (H) -> e1 (H/2, stride 2) -> e2 (H/2); decoder: upsample,
  // d0, concat with e0 activations, d1, d2+sigmoid
  std::unique_ptr<Conv2d> e0_, e1_, e2_, d0_, d1_, d2_;
};

// "srgen-s": conv stack with one nearest-neighbor upsample, sigmoid output.
class SrGenerator : public Recreator {
 public:
  SrGenerator(int h, int w, int factor, int channels, Rng& rng);
  std::string kind() const override { return "superres"; }
  Image predict(const Image& img) const override;
  Image input_grad(const Image& img, const Image& upstream) const override;
  int scale_factor() const override { return factor_; }

  int input_h() const { return h_; }
  int input_w() const { return w_; }
  int channels() const { return channels_; }

  Sequential& net() { return net_; }
  const Sequential& net() const { return net_; }

 private:
  int h_, w_, factor_, channels_;
  Sequential net_;
};

// "disc-s": small conv binary classifier on generator-resolution images.
// The net outputs a pre-sigmoid logit.
class Discriminator {
 public:
  Discriminator(int h, int w, int channels, Rng& rng);
  // probability the input is a real (non-generated) image
  double real_prob(const Tensor& x) const;

  int channels() const { return channels_; }
  Sequential& net() { return net_; }
  const Sequential& net() const { return net_; }

 private:
  int h_, w_, channels_;
  Sequential net_;
};

// Test-double recreator: identity, constant fill, or a captured image
// returned regardless of input (the "perfect inpainter" oracle).
class OracleRecreator : public Recreator {
 public:
  enum class Mode { kIdentity, kConstant, kFixed };
  explicit OracleRecreator(Mode mode, double value = 0.0)
      : mode_(mode), value_(value) {}
  static OracleRecreator fixed(Image img) {
    OracleRecreator r(Mode::kFixed);
    r.fixed_ = std::move(img);
    return r;
  }
  std::string kind() const override { return "oracle"; }
  Image predict(const Image& img) const override;
  Image input_grad(const Image& img, const Image& upstream) const override;

 private:
  Mode mode_;
  double value_;
  Image fixed_;
};

}  // namespace percept::models

#endif  // PERCEPT_NN_HPP_

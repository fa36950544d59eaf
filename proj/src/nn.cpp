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

#include "percept/nn.hpp"

#include <algorithm>
#include <cmath>

#include "percept/errors.hpp"
#include "percept/kernels.hpp"

namespace percept::models {
namespace {

int conv_out(int in, int k, int stride, int pad) {
  return (in + 2 * pad - k) / stride + 1;
}

// (cin, H, W) -> (cin*k*k, Ho*Wo); zero padding
void im2col(const Tensor& x, int k, int stride, int pad, Tensor& col) {
  const int ho = conv_out(x.h, k, stride, pad);
  const int wo = conv_out(x.w, k, stride, pad);
  const int n = ho * wo;
  col = Tensor::mat(x.c * k * k, n);
  double* out = col.ptr();
  for (int ci = 0; ci < x.c; ++ci) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        for (int oy = 0; oy < ho; ++oy) {
          const int iy = oy * stride - pad + ky;
          if (iy < 0 || iy >= x.h) {
            out += wo;
            continue;
          }
          for (int ox = 0; ox < wo; ++ox) {
            const int ix = ox * stride - pad + kx;
            *out++ = (ix < 0 || ix >= x.w) ? 0.0 : x.at(ci, iy, ix);
          }
        }
      }
    }
  }
  (void)n;
}

// scatter-add transpose of im2col
void col2im(const Tensor& col, int cin, int h, int w, int k, int stride,
            int pad, Tensor& x) {
  const int ho = conv_out(h, k, stride, pad);
  const int wo = conv_out(w, k, stride, pad);
  x = Tensor(cin, h, w, 0.0);
  const double* in = col.ptr();
  for (int ci = 0; ci < cin; ++ci) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        for (int oy = 0; oy < ho; ++oy) {
          const int iy = oy * stride - pad + ky;
          if (iy < 0 || iy >= h) {
            in += wo;
            continue;
          }
          for (int ox = 0; ox < wo; ++ox) {
            const int ix = ox * stride - pad + kx;
            const double v = *in++;
            if (ix >= 0 && ix < w) x.at(ci, iy, ix) += v;
          }
        }
      }
    }
  }
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  Tensor out(a.c + b.c, a.h, a.w);
  std::copy(a.data.begin(), a.data.end(), out.data.begin());
  std::copy(b.data.begin(), b.data.end(), out.data.begin() + a.numel());
  return out;
}

}  // namespace

Tensor image_to_tensor(const imaging::Image& img) {
  Tensor t(3, img.h, img.w);
  for (int y = 0; y < img.h; ++y) {
    for (int x = 0; x < img.w; ++x) {
      for (int c = 0; c < 3; ++c) t.at(c, y, x) = img.at(y, x, c);
    }
  }
  return t;
}

imaging::Image tensor_to_image(const Tensor& t) {
  if (t.c != 3) throw ShapeError("tensor_to_image: expected 3 channels");
  imaging::Image img(t.h, t.w);
  for (int y = 0; y < t.h; ++y) {
    for (int x = 0; x < t.w; ++x) {
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = t.at(c, y, x);
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// layers

Conv2d::Conv2d(int cin, int cout, int ksize, int stride, int pad, Rng& rng)
    : cin_(cin), cout_(cout), ksize_(ksize), stride_(stride), pad_(pad),
      weight_(Tensor::mat(cout, cin * ksize * ksize)),
      bias_(Tensor::vec(cout)) {
  // He init
  const double stddev = std::sqrt(2.0 / (cin * ksize * ksize));
  for (double& v : weight_.data) v = rng.normal(0.0, stddev);
}

Tensor Conv2d::forward(const Tensor& x, LayerCache* cache) const {
  if (x.c != cin_)
    throw ShapeError("conv2d: input has " + std::to_string(x.c) +
                     " channels, expected " + std::to_string(cin_));
  const int ho = conv_out(x.h, ksize_, stride_, pad_);
  const int wo = conv_out(x.w, ksize_, stride_, pad_);
  Tensor col;
  im2col(x, ksize_, stride_, pad_, col);

  Tensor y(cout_, ho, wo, 0.0);
  kernels::active().gemm_nn(weight_.ptr(), col.ptr(), y.ptr(), cout_,
                            weight_.h, ho * wo);
  const int plane = ho * wo;
  for (int o = 0; o < cout_; ++o) {
    double* row = y.ptr() + static_cast<std::size_t>(o) * plane;
    const double b = bias_.data[o];
    for (int j = 0; j < plane; ++j) row[j] += b;
  }
  if (cache) cache->in = x;
  return y;
}

Tensor Conv2d::backward(const Tensor& dy, const LayerCache& cache,
                        std::vector<Tensor>* grads) const {
  const Tensor& x = cache.in;
  const int plane = dy.h * dy.w;
  Tensor col;
  im2col(x, ksize_, stride_, pad_, col);

  if (grads) {
    Tensor& dw = (*grads)[0];
    Tensor& db = (*grads)[1];
    // dW += dY * Col^T
    kernels::active().gemm_nt(dy.ptr(), col.ptr(), dw.ptr(), cout_, plane,
                              weight_.h);
    for (int o = 0; o < cout_; ++o) {
      db.data[o] += kernels::active().sum(
          dy.ptr() + static_cast<std::size_t>(o) * plane, plane);
    }
  }
  // dCol = W^T * dY, then scatter back to the input grid
  Tensor dcol = Tensor::mat(weight_.h, plane);
  kernels::active().gemm_tn(weight_.ptr(), dy.ptr(), dcol.ptr(), weight_.h,
                            cout_, plane);
  Tensor dx;
  col2im(dcol, cin_, x.h, x.w, ksize_, stride_, pad_, dx);
  return dx;
}

Tensor Relu::forward(const Tensor& x, LayerCache* cache) const {
  Tensor y = x;
  kernels::active().relu(y.ptr(), y.numel());
  if (cache) cache->out = y;
  return y;
}

Tensor Relu::backward(const Tensor& dy, const LayerCache& cache,
                      std::vector<Tensor>*) const {
  Tensor dx = dy;
  kernels::active().relu_backward(cache.out.ptr(), dx.ptr(), dx.numel());
  return dx;
}

Tensor Sigmoid::forward(const Tensor& x, LayerCache* cache) const {
  Tensor y = x;
  for (double& v : y.data) v = stable_sigmoid(v);
  if (cache) cache->out = y;
  return y;
}

Tensor Sigmoid::backward(const Tensor& dy, const LayerCache& cache,
                         std::vector<Tensor>*) const {
  Tensor dx = dy;
  const Tensor& y = cache.out;
  for (std::size_t i = 0; i < dx.data.size(); ++i)
    dx.data[i] *= y.data[i] * (1.0 - y.data[i]);
  return dx;
}

Dense::Dense(int in, int out, Rng& rng)
    : in_(in), out_(out), weight_(Tensor::mat(out, in)),
      bias_(Tensor::vec(out)) {
  const double stddev = std::sqrt(2.0 / in);
  for (double& v : weight_.data) v = rng.normal(0.0, stddev);
}

Tensor Dense::forward(const Tensor& x, LayerCache* cache) const {
  if (static_cast<int>(x.numel()) != in_)
    throw ShapeError("dense: input size " + std::to_string(x.numel()) +
                     ", expected " + std::to_string(in_));
  Tensor y = Tensor::vec(out_);
  const auto& k = kernels::active();
  for (int o = 0; o < out_; ++o) {
    y.data[o] =
        k.dot(weight_.ptr() + static_cast<std::size_t>(o) * in_, x.ptr(), in_) +
        bias_.data[o];
  }
  if (cache) cache->in = x;
  return y;
}

Tensor Dense::backward(const Tensor& dy, const LayerCache& cache,
                       std::vector<Tensor>* grads) const {
  const Tensor& x = cache.in;
  const auto& k = kernels::active();
  if (grads) {
    Tensor& dw = (*grads)[0];
    Tensor& db = (*grads)[1];
    for (int o = 0; o < out_; ++o) {
      k.axpy(dy.data[o], x.ptr(), dw.ptr() + static_cast<std::size_t>(o) * in_,
             in_);
      db.data[o] += dy.data[o];
    }
  }
  Tensor dx(x.c, x.h, x.w, 0.0);
  for (int o = 0; o < out_; ++o) {
    k.axpy(dy.data[o], weight_.ptr() + static_cast<std::size_t>(o) * in_,
           dx.ptr(), in_);
  }
  return dx;
}

UpsampleNearest::UpsampleNearest(int factor) : factor_(factor) {
  if (factor < 1) throw ParamError("upsample: factor must be >= 1");
}

Tensor UpsampleNearest::forward(const Tensor& x, LayerCache* cache) const {
  Tensor y(x.c, x.h * factor_, x.w * factor_);
  for (int c = 0; c < x.c; ++c) {
    for (int iy = 0; iy < x.h; ++iy) {
      for (int ix = 0; ix < x.w; ++ix) {
        const double v = x.at(c, iy, ix);
        for (int dy = 0; dy < factor_; ++dy) {
          for (int dx = 0; dx < factor_; ++dx)
            y.at(c, iy * factor_ + dy, ix * factor_ + dx) = v;
        }
      }
    }
  }
  if (cache) {
    cache->in = Tensor(x.c, x.h, x.w);  // shape only
  }
  return y;
}

Tensor UpsampleNearest::backward(const Tensor& dy, const LayerCache& cache,
                                 std::vector<Tensor>*) const {
  const Tensor& shape = cache.in;
  Tensor dx(shape.c, shape.h, shape.w, 0.0);
  for (int c = 0; c < shape.c; ++c) {
    for (int oy = 0; oy < dy.h; ++oy) {
      for (int ox = 0; ox < dy.w; ++ox)
        dx.at(c, oy / factor_, ox / factor_) += dy.at(c, oy, ox);
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// sequential

Tensor Sequential::forward(const Tensor& x,
                           std::vector<LayerCache>* tape) const {
  if (tape) tape->resize(layers_.size());
  Tensor cur = x;
  for (std::size_t i = 0; i < layers_.size(); ++i)
    cur = layers_[i]->forward(cur, tape ? &(*tape)[i] : nullptr);
  return cur;
}

Tensor Sequential::backward(const Tensor& dy,
                            const std::vector<LayerCache>& tape,
                            std::vector<std::vector<Tensor>>* grads) const {
  Tensor cur = dy;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    cur = layers_[i]->backward(cur, tape[i], grads ? &(*grads)[i] : nullptr);
  }
  return cur;
}

std::vector<std::vector<Tensor>> Sequential::make_grads() const {
  std::vector<std::vector<Tensor>> grads(layers_.size());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    for (const Tensor* p : layers_[i]->params())
      grads[i].push_back(Tensor(p->c, p->h, p->w, 0.0));
  }
  return grads;
}

void Sequential::collect(std::vector<Tensor*>& params,
                         std::vector<std::vector<Tensor>>& grads,
                         std::vector<Tensor*>& flat_grads) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto ps = layers_[i]->params();
    for (std::size_t j = 0; j < ps.size(); ++j) {
      params.push_back(ps[j]);
      flat_grads.push_back(&grads[i][j]);
    }
  }
}

std::vector<Tensor*> Sequential::param_tensors() {
  std::vector<Tensor*> out;
  for (auto& l : layers_) {
    for (Tensor* p : l->params()) out.push_back(p);
  }
  return out;
}

std::vector<const Tensor*> Sequential::param_tensors() const {
  std::vector<const Tensor*> out;
  for (const auto& l : layers_) {
    for (const Tensor* p : static_cast<const Layer&>(*l).params())
      out.push_back(p);
  }
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  std::vector<double> out(logits.size());
  const double mx = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    denom += out[i];
  }
  for (double& v : out) v /= denom;
  return out;
}

// ---------------------------------------------------------------------------
// classifier

Classifier::Classifier(int h, int w, int num_classes, int channels, Rng& rng)
    : h_(h), w_(w), num_classes_(num_classes), channels_(channels) {
  if (h % 8 != 0 || w % 8 != 0)
    throw ParamError("classifier: input dimensions must be multiples of 8");
  if (num_classes < 2) throw ParamError("classifier: need >= 2 classes");
  const int c = channels;
  net_.add(std::make_unique<Conv2d>(3, c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(c, c, 3, 2, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(c, 2 * c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(2 * c, 2 * c, 3, 2, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(2 * c, 4 * c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(4 * c, 4 * c, 3, 2, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Dense>(4 * c * (h / 8) * (w / 8), num_classes, rng));
}

Tensor Classifier::logits(const Tensor& x, std::vector<LayerCache>* tape) const {
  if (x.h != h_ || x.w != w_)
    throw ShapeError("classifier: input is " + std::to_string(x.h) + "x" +
                     std::to_string(x.w) + ", trained for " +
                     std::to_string(h_) + "x" + std::to_string(w_));
  return net_.forward(x, tape);
}

std::vector<double> Classifier::probs(const Image& img) const {
  const Tensor z = logits(image_to_tensor(img), nullptr);
  return softmax(z.data);
}

std::vector<std::vector<double>> Classifier::probs_batch(
    const Batch& batch) const {
  std::vector<std::vector<double>> out;
  out.reserve(batch.b);
  for (int i = 0; i < batch.b; ++i)
    out.push_back(probs(imaging::batch_image(batch, i)));
  return out;
}

int Classifier::predict_class(const Image& img) const {
  const auto p = probs(img);
  return static_cast<int>(
      std::max_element(p.begin(), p.end()) - p.begin());
}

Image Classifier::loss_input_grad(const Image& img, int label) const {
  if (label < 0 || label >= num_classes_)
    throw ParamError("classifier: label out of range");
  std::vector<LayerCache> tape;
  const Tensor z = logits(image_to_tensor(img), &tape);
  const auto p = softmax(z.data);
  Tensor dz = Tensor::vec(num_classes_);
  for (int k = 0; k < num_classes_; ++k)
    dz.data[k] = p[k] - (k == label ? 1.0 : 0.0);
  const Tensor dx = net_.backward(dz, tape, nullptr);
  return tensor_to_image(dx);
}

// ---------------------------------------------------------------------------
// inpainter

Inpainter::Inpainter(int h, int w, int channels, Rng& rng)
    : h_(h), w_(w), channels_(channels) {
  if (h % 2 != 0 || w % 2 != 0)
    throw ParamError("inpainter: input dimensions must be even");
  const int c = channels;
  e0_ = std::make_unique<Conv2d>(3, c, 3, 1, 1, rng);
  e1_ = std::make_unique<Conv2d>(c, 2 * c, 3, 2, 1, rng);
  e2_ = std::make_unique<Conv2d>(2 * c, 2 * c, 3, 1, 1, rng);
  d0_ = std::make_unique<Conv2d>(2 * c, c, 3, 1, 1, rng);
  d1_ = std::make_unique<Conv2d>(2 * c, c, 3, 1, 1, rng);
  d2_ = std::make_unique<Conv2d>(c, 3, 3, 1, 1, rng);
}

Tensor Inpainter::forward(const Tensor& x, Tape* tape) const {
  if (x.h != h_ || x.w != w_)
    throw ShapeError("inpainter: input is " + std::to_string(x.h) + "x" +
                     std::to_string(x.w) + ", trained for " +
                     std::to_string(h_) + "x" + std::to_string(w_));
  Relu relu;
  Sigmoid sigmoid;
  UpsampleNearest up(2);

  Tensor a = e0_->forward(x, tape ? &tape->e0 : nullptr);
  a = relu.forward(a, tape ? &tape->r0 : nullptr);
  if (tape) tape->e0_act = a;
  Tensor skip = a;

  a = e1_->forward(a, tape ? &tape->e1 : nullptr);
  a = relu.forward(a, tape ? &tape->r1 : nullptr);
  a = e2_->forward(a, tape ? &tape->e2 : nullptr);
  a = relu.forward(a, tape ? &tape->r2 : nullptr);

  a = up.forward(a, tape ? &tape->u0 : nullptr);
  a = d0_->forward(a, tape ? &tape->d0 : nullptr);
  a = relu.forward(a, tape ? &tape->r3 : nullptr);

  a = concat_channels(a, skip);
  a = d1_->forward(a, tape ? &tape->d1 : nullptr);
  a = relu.forward(a, tape ? &tape->r4 : nullptr);
  a = d2_->forward(a, tape ? &tape->d2 : nullptr);
  return sigmoid.forward(a, tape ? &tape->s0 : nullptr);
}

Tensor Inpainter::backward(const Tensor& dy, const Tape& tape,
                           std::vector<std::vector<Tensor>>* grads) const {
  Relu relu;
  Sigmoid sigmoid;
  UpsampleNearest up(2);
  const int c = channels_;

  auto slot = [&](int i) { return grads ? &(*grads)[i] : nullptr; };

  Tensor g = sigmoid.backward(dy, tape.s0, nullptr);
  g = d2_->backward(g, tape.d2, slot(5));
  g = relu.backward(g, tape.r4, nullptr);
  g = d1_->backward(g, tape.d1, slot(4));

  // split the concat gradient: first c channels to the decoder branch,
  // last c channels to the skip
  Tensor g_dec(c, h_, w_);
  Tensor g_skip(c, h_, w_);
  std::copy(g.data.begin(), g.data.begin() + g_dec.numel(), g_dec.data.begin());
  std::copy(g.data.begin() + g_dec.numel(), g.data.end(), g_skip.data.begin());

  g = relu.backward(g_dec, tape.r3, nullptr);
  g = d0_->backward(g, tape.d0, slot(3));
  g = up.backward(g, tape.u0, nullptr);
  g = relu.backward(g, tape.r2, nullptr);
  g = e2_->backward(g, tape.e2, slot(2));
  g = relu.backward(g, tape.r1, nullptr);
  g = e1_->backward(g, tape.e1, slot(1));

  kernels::active().axpy(1.0, g_skip.ptr(), g.ptr(), g.numel());
  g = relu.backward(g, tape.r0, nullptr);
  return e0_->backward(g, tape.e0, slot(0));
}

Image Inpainter::predict(const Image& img) const {
  return tensor_to_image(forward(image_to_tensor(img), nullptr));
}

Image Inpainter::input_grad(const Image& img, const Image& upstream) const {
  Tape tape;
  forward(image_to_tensor(img), &tape);
  const Tensor dx = backward(image_to_tensor(upstream), tape, nullptr);
  return tensor_to_image(dx);
}

std::vector<Tensor*> Inpainter::param_tensors() {
  std::vector<Tensor*> out;
  for (Conv2d* conv : {e0_.get(), e1_.get(), e2_.get(), d0_.get(), d1_.get(),
                       d2_.get()}) {
    for (Tensor* p : conv->params()) out.push_back(p);
  }
  return out;
}

std::vector<const Tensor*> Inpainter::param_tensors() const {
  std::vector<const Tensor*> out;
  for (const Conv2d* conv : {e0_.get(), e1_.get(), e2_.get(), d0_.get(),
                             d1_.get(), d2_.get()}) {
    for (const Tensor* p : static_cast<const Layer&>(*conv).params())
      out.push_back(p);
  }
  return out;
}

std::vector<std::vector<Tensor>> Inpainter::make_grads() const {
  std::vector<std::vector<Tensor>> grads;
  for (const Conv2d* conv : {e0_.get(), e1_.get(), e2_.get(), d0_.get(),
                             d1_.get(), d2_.get()}) {
    std::vector<Tensor> g;
    for (const Tensor* p : static_cast<const Layer&>(*conv).params())
      g.push_back(Tensor(p->c, p->h, p->w, 0.0));
    grads.push_back(std::move(g));
  }
  return grads;
}

// ---------------------------------------------------------------------------
// super-resolution generator

SrGenerator::SrGenerator(int h, int w, int factor, int channels, Rng& rng)
    : h_(h), w_(w), factor_(factor), channels_(channels) {
  if (factor < 2) throw ParamError("srgen: factor must be >= 2");
  if (h > (1 << 20) / factor || w > (1 << 20) / factor)
    throw ParamError("srgen: output dimensions overflow");
  const int c = channels;
  net_.add(std::make_unique<Conv2d>(3, c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(c, c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<UpsampleNearest>(factor));
  net_.add(std::make_unique<Conv2d>(c, c, 3, 1, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(c, 3, 3, 1, 1, rng));
  net_.add(std::make_unique<Sigmoid>());
}

Image SrGenerator::predict(const Image& img) const {
  if (img.h != h_ || img.w != w_)
    throw ShapeError("srgen: input is " + std::to_string(img.h) + "x" +
                     std::to_string(img.w) + ", trained for " +
                     std::to_string(h_) + "x" + std::to_string(w_));
  return tensor_to_image(net_.forward(image_to_tensor(img), nullptr));
}

Image SrGenerator::input_grad(const Image& img, const Image& upstream) const {
  std::vector<LayerCache> tape;
  net_.forward(image_to_tensor(img), &tape);
  const Tensor dx = net_.backward(image_to_tensor(upstream), tape, nullptr);
  return tensor_to_image(dx);
}

// ---------------------------------------------------------------------------
// discriminator

Discriminator::Discriminator(int h, int w, int channels, Rng& rng)
    : h_(h), w_(w), channels_(channels) {
  if (h % 4 != 0 || w % 4 != 0)
    throw ParamError("discriminator: input dimensions must be multiples of 4");
  const int c = channels;
  // net emits the pre-sigmoid logit; training wants p - t gradients
  net_.add(std::make_unique<Conv2d>(3, c, 3, 2, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Conv2d>(c, 2 * c, 3, 2, 1, rng));
  net_.add(std::make_unique<Relu>());
  net_.add(std::make_unique<Dense>(2 * c * (h / 4) * (w / 4), 1, rng));
}

double Discriminator::real_prob(const Tensor& x) const {
  return stable_sigmoid(net_.forward(x, nullptr).data[0]);
}

// ---------------------------------------------------------------------------
// oracle recreator

Image OracleRecreator::predict(const Image& img) const {
  switch (mode_) {
    case Mode::kIdentity:
      return img;
    case Mode::kConstant:
      return Image(img.h, img.w, value_);
    case Mode::kFixed:
      if (!fixed_.same_shape(img))
        throw ShapeError("oracle recreator: fixed image shape mismatch");
      return fixed_;
  }
  throw ParamError("oracle recreator: bad mode");
}

Image OracleRecreator::input_grad(const Image& img, const Image& upstream) const {
  if (mode_ == Mode::kIdentity) return upstream;
  return Image(img.h, img.w, 0.0);  // constant/fixed maps have zero Jacobian
}

}  // namespace percept::models

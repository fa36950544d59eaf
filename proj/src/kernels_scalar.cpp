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

// Scalar reference kernels. These define the numeric semantics; every other
// backend is tested against them.

#include <cmath>
#include <cstddef>

#include "percept/kernels.hpp"

namespace percept::kernels {
namespace {

void gemm_nn_scalar(const double* a, const double* b, double* c, int m, int k,
                    int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double* bp = b + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void gemm_nt_scalar(const double* a, const double* b, double* c, int m, int k,
                    int n) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] += acc;
    }
  }
}

void gemm_tn_scalar(const double* a, const double* b, double* c, int m, int k,
                    int n) {
  for (int p = 0; p < k; ++p) {
    const double* ap = a + static_cast<std::size_t>(p) * m;
    const double* bp = b + static_cast<std::size_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      const double api = ap[i];
      if (api == 0.0) continue;
      double* ci = c + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) ci[j] += api * bp[j];
    }
  }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double abs_diff_sum_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
  return acc;
}

void hadamard_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void clamp01_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) x[i] = 0.0;
    if (x[i] > 1.0) x[i] = 1.0;
  }
}

void relu_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) x[i] = 0.0;
  }
}

void relu_backward_scalar(const double* a, double* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] <= 0.0) g[i] = 0.0;
  }
}

void signed_step_scalar(const double* x, const double* g, double eps,
                        double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    if (g[i] > 0.0) s = 1.0;
    if (g[i] < 0.0) s = -1.0;
    double v = x[i] + eps * s;
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    y[i] = v;
  }
}

void sgd_step_scalar(double lr, double momentum, double* vel, double* param,
                     const double* grad, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    vel[i] = momentum * vel[i] - lr * grad[i];
    param[i] += vel[i];
  }
}

void adam_step_scalar(double lr, double b1, double b2, double eps, double b1t,
                      double b2t, double* m, double* v, double* param,
                      const double* grad, std::size_t n) {
  const double mc = 1.0 / (1.0 - b1t);
  const double vc = 1.0 / (1.0 - b2t);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
    v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
    param[i] -= lr * (m[i] * mc) / (std::sqrt(v[i] * vc) + eps);
  }
}

}  // namespace

const Backend kScalarBackend = {
    "scalar",        gemm_nn_scalar,  gemm_nt_scalar,
    gemm_tn_scalar,  axpy_scalar,     scale_scalar,
    dot_scalar,      sum_scalar,      abs_diff_sum_scalar,
    hadamard_scalar, clamp01_scalar,  relu_scalar,
    relu_backward_scalar, signed_step_scalar, sgd_step_scalar,
    adam_step_scalar,
};

}  // namespace percept::kernels

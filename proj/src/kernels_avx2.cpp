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

// AVX2+FMA kernel variants. Compiled with per-function target attributes so
// the translation unit builds without global -mavx2 and the binary still runs
// on CPUs without AVX2 (dispatch falls back to scalar).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "percept/kernels.hpp"

#define PERCEPT_AVX2 __attribute__((target("avx2,fma")))

namespace percept::kernels {
namespace {

PERCEPT_AVX2 double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

PERCEPT_AVX2 void gemm_nn_avx2(const double* a, const double* b, double* c,
                               int m, int k, int n) {
  const int n4 = n & ~3;
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    int p = 0;
    // two rows of B per pass keeps the FMA pipes busier
    for (; p + 1 < k; p += 2) {
      const __m256d a0 = _mm256_set1_pd(ai[p]);
      const __m256d a1 = _mm256_set1_pd(ai[p + 1]);
      const double* b0 = b + static_cast<std::size_t>(p) * n;
      const double* b1 = b0 + n;
      int j = 0;
      for (; j < n4; j += 4) {
        __m256d acc = _mm256_loadu_pd(ci + j);
        acc = _mm256_fmadd_pd(a0, _mm256_loadu_pd(b0 + j), acc);
        acc = _mm256_fmadd_pd(a1, _mm256_loadu_pd(b1 + j), acc);
        _mm256_storeu_pd(ci + j, acc);
      }
      for (; j < n; ++j) ci[j] += ai[p] * b0[j] + ai[p + 1] * b1[j];
    }
    for (; p < k; ++p) {
      const __m256d a0 = _mm256_set1_pd(ai[p]);
      const double* b0 = b + static_cast<std::size_t>(p) * n;
      int j = 0;
      for (; j < n4; j += 4) {
        __m256d acc = _mm256_loadu_pd(ci + j);
        acc = _mm256_fmadd_pd(a0, _mm256_loadu_pd(b0 + j), acc);
        _mm256_storeu_pd(ci + j, acc);
      }
      for (; j < n; ++j) ci[j] += ai[p] * b0[j];
    }
  }
}

PERCEPT_AVX2 void gemm_nt_avx2(const double* a, const double* b, double* c,
                               int m, int k, int n) {
  const int k4 = k & ~3;
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      __m256d acc = _mm256_setzero_pd();
      int p = 0;
      for (; p < k4; p += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(ai + p),
                              _mm256_loadu_pd(bj + p), acc);
      }
      double tail = 0.0;
      for (; p < k; ++p) tail += ai[p] * bj[p];
      ci[j] += hsum4(acc) + tail;
    }
  }
}

PERCEPT_AVX2 void gemm_tn_avx2(const double* a, const double* b, double* c,
                               int m, int k, int n) {
  const int n4 = n & ~3;
  for (int p = 0; p < k; ++p) {
    const double* ap = a + static_cast<std::size_t>(p) * m;
    const double* bp = b + static_cast<std::size_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      const __m256d api = _mm256_set1_pd(ap[i]);
      double* ci = c + static_cast<std::size_t>(i) * n;
      int j = 0;
      for (; j < n4; j += 4) {
        __m256d acc = _mm256_loadu_pd(ci + j);
        acc = _mm256_fmadd_pd(api, _mm256_loadu_pd(bp + j), acc);
        _mm256_storeu_pd(ci + j, acc);
      }
      for (; j < n; ++j) ci[j] += ap[i] * bp[j];
    }
  }
}

PERCEPT_AVX2 void axpy_avx2(double alpha, const double* x, double* y,
                            std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    __m256d acc = _mm256_loadu_pd(y + i);
    acc = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), acc);
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

PERCEPT_AVX2 void scale_avx2(double alpha, double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

PERCEPT_AVX2 double dot_avx2(const double* x, const double* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return hsum4(acc) + tail;
}

PERCEPT_AVX2 double sum_avx2(const double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return hsum4(acc) + tail;
}

PERCEPT_AVX2 double abs_diff_sum_avx2(const double* x, const double* y,
                                      std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, absmask));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += std::fabs(x[i] - y[i]);
  return hsum4(acc) + tail;
}

PERCEPT_AVX2 void hadamard_avx2(const double* x, double* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    _mm256_storeu_pd(
        y + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] *= x[i];
}

PERCEPT_AVX2 void clamp01_avx2(double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    v = _mm256_min_pd(_mm256_max_pd(v, zero), one);
    _mm256_storeu_pd(x + i, v);
  }
  for (; i < n; ++i) {
    if (x[i] < 0.0) x[i] = 0.0;
    if (x[i] > 1.0) x[i] = 1.0;
  }
}

PERCEPT_AVX2 void relu_avx2(double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i) {
    if (x[i] < 0.0) x[i] = 0.0;
  }
}

PERCEPT_AVX2 void relu_backward_avx2(const double* a, double* g,
                                     std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(a + i), zero, _CMP_GT_OQ);
    _mm256_storeu_pd(g + i, _mm256_and_pd(_mm256_loadu_pd(g + i), mask));
  }
  for (; i < n; ++i) {
    if (a[i] <= 0.0) g[i] = 0.0;
  }
}

PERCEPT_AVX2 void signed_step_avx2(const double* x, const double* g,
                                   double eps, double* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d gv = _mm256_loadu_pd(g + i);
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(gv, zero, _CMP_GT_OQ), one);
    const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(gv, zero, _CMP_LT_OQ), one);
    const __m256d sign = _mm256_sub_pd(pos, neg);
    __m256d v = _mm256_fmadd_pd(veps, sign, _mm256_loadu_pd(x + i));
    v = _mm256_min_pd(_mm256_max_pd(v, zero), one);
    _mm256_storeu_pd(y + i, v);
  }
  for (; i < n; ++i) {
    double s = 0.0;
    if (g[i] > 0.0) s = 1.0;
    if (g[i] < 0.0) s = -1.0;
    double v = x[i] + eps * s;
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    y[i] = v;
  }
}

PERCEPT_AVX2 void sgd_step_avx2(double lr, double momentum, double* vel,
                                double* param, const double* grad,
                                std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d vm = _mm256_set1_pd(momentum);
  const __m256d vlr = _mm256_set1_pd(-lr);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    __m256d v = _mm256_mul_pd(vm, _mm256_loadu_pd(vel + i));
    v = _mm256_fmadd_pd(vlr, _mm256_loadu_pd(grad + i), v);
    _mm256_storeu_pd(vel + i, v);
    _mm256_storeu_pd(param + i, _mm256_add_pd(_mm256_loadu_pd(param + i), v));
  }
  for (; i < n; ++i) {
    vel[i] = momentum * vel[i] - lr * grad[i];
    param[i] += vel[i];
  }
}

PERCEPT_AVX2 void adam_step_avx2(double lr, double b1, double b2, double eps,
                                 double b1t, double b2t, double* m, double* v,
                                 double* param, const double* grad,
                                 std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const double mc = 1.0 / (1.0 - b1t);
  const double vc = 1.0 / (1.0 - b2t);
  const __m256d vb1 = _mm256_set1_pd(b1);
  const __m256d vb2 = _mm256_set1_pd(b2);
  const __m256d vb1c = _mm256_set1_pd(1.0 - b1);
  const __m256d vb2c = _mm256_set1_pd(1.0 - b2);
  const __m256d vmc = _mm256_set1_pd(mc);
  const __m256d vvc = _mm256_set1_pd(vc);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vlr = _mm256_set1_pd(lr);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d g = _mm256_loadu_pd(grad + i);
    __m256d mi = _mm256_mul_pd(vb1, _mm256_loadu_pd(m + i));
    mi = _mm256_fmadd_pd(vb1c, g, mi);
    _mm256_storeu_pd(m + i, mi);
    __m256d vi = _mm256_mul_pd(vb2, _mm256_loadu_pd(v + i));
    vi = _mm256_fmadd_pd(vb2c, _mm256_mul_pd(g, g), vi);
    _mm256_storeu_pd(v + i, vi);
    const __m256d denom =
        _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vi, vvc)), veps);
    const __m256d step =
        _mm256_div_pd(_mm256_mul_pd(vlr, _mm256_mul_pd(mi, vmc)), denom);
    _mm256_storeu_pd(param + i,
                     _mm256_sub_pd(_mm256_loadu_pd(param + i), step));
  }
  for (; i < n; ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
    v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
    param[i] -= lr * (m[i] * mc) / (std::sqrt(v[i] * vc) + eps);
  }
}

}  // namespace

const Backend kAvx2Backend = {
    "avx2",        gemm_nn_avx2,  gemm_nt_avx2,
    gemm_tn_avx2,  axpy_avx2,     scale_avx2,
    dot_avx2,      sum_avx2,      abs_diff_sum_avx2,
    hadamard_avx2, clamp01_avx2,  relu_avx2,
    relu_backward_avx2, signed_step_avx2, sgd_step_avx2,
    adam_step_avx2,
};

}  // namespace percept::kernels

#endif  // x86_64

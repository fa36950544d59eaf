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
#ifndef PERCEPT_KERNELS_HPP_
#define PERCEPT_KERNELS_HPP_

#include <cstddef>
#include <string>

namespace percept::kernels {

// Inner-loop kernel table. Scalar reference versions define the semantics;
// the AVX2 versions must match them within summation-reordering error and are
// equivalence-tested against them. All matrices are row-major, all kernels
// accumulate into C (callers zero it when they want a plain product).
struct Backend {
  const char* name;

  // C(MxN) += A(MxK) * B(KxN)
  void (*gemm_nn)(const double* a, const double* b, double* c, int m, int k,
                  int n);
  // C(MxN) += A(MxK) * B(NxK)^T
  void (*gemm_nt)(const double* a, const double* b, double* c, int m, int k,
                  int n);
  // C(MxN) += A(KxM)^T * B(KxN)
  void (*gemm_tn)(const double* a, const double* b, double* c, int m, int k,
                  int n);

  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*abs_diff_sum)(const double* x, const double* y, std::size_t n);
  void (*hadamard)(const double* x, double* y, std::size_t n);  // y *= x
  void (*clamp01)(double* x, std::size_t n);
  void (*relu)(double* x, std::size_t n);
  // g *= (a > 0), a holds the forward activations
  void (*relu_backward)(const double* a, double* g, std::size_t n);
  // y = clamp01(x + eps * sign(g)); sign(0) = 0
  void (*signed_step)(const double* x, const double* g, double eps, double* y,
                      std::size_t n);
  void (*sgd_step)(double lr, double momentum, double* vel, double* param,
                   const double* grad, std::size_t n);
  // bias-corrected Adam; b1t/b2t are beta1^t / beta2^t for the current step
  void (*adam_step)(double lr, double b1, double b2, double eps, double b1t,
                    double b2t, double* m, double* v, double* param,
                    const double* grad, std::size_t n);
};

extern const Backend kScalarBackend;
#if defined(__x86_64__) || defined(_M_X64)
extern const Backend kAvx2Backend;
#endif

// Active backend. Selected once: AVX2 when the CPU supports avx2+fma, scalar
// otherwise. select() overrides ("scalar", "avx2", "auto"); throws ParamError
// for unknown names or unsupported hardware.
const Backend& active();
void select(const std::string& name);
bool cpu_has_avx2();

}  // namespace percept::kernels

#endif  // PERCEPT_KERNELS_HPP_

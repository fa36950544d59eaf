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

#include "percept/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "percept/errors.hpp"

namespace percept::kernels {
namespace {

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
  // PERCEPT_KERNELS overrides the hardware pick (useful for A/B runs).
  if (const char* env = std::getenv("PERCEPT_KERNELS")) {
    const std::string name(env);
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && cpu_has_avx2()) return &kAvx2Backend;
#endif
    if (name == "scalar") return &kScalarBackend;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return &kAvx2Backend;
#endif
  return &kScalarBackend;
}

}  // namespace

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && \
    (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = pick_default();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

void select(const std::string& name) {
  if (name == "auto") {
    g_active.store(nullptr, std::memory_order_release);
    active();
    return;
  }
  if (name == "scalar") {
    g_active.store(&kScalarBackend, std::memory_order_release);
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!cpu_has_avx2())
      throw ParamError("kernels: this CPU does not support avx2+fma");
    g_active.store(&kAvx2Backend, std::memory_order_release);
    return;
  }
#endif
  throw ParamError("kernels: unknown backend '" + name + "'");
}

}  // namespace percept::kernels

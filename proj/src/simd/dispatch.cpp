// Copyright 2026 the microcontact authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_isa.hpp"
#include "microcontact/simd/kernels.hpp"

namespace microcontact::simd {

namespace {

constexpr Kernels kScalar{scalar::dot, scalar::axpy, scalar::gemv, scalar::min_residual_inf,
                          scalar::project_nonneg_step};

#if defined(MICROCONTACT_HAVE_AVX2)
constexpr Kernels kAvx2{avx2::dot, avx2::axpy, avx2::gemv, avx2::min_residual_inf,
                        avx2::project_nonneg_step};
#endif
#if defined(MICROCONTACT_HAVE_NEON)
constexpr Kernels kNeon{neon::dot, neon::axpy, neon::gemv, neon::min_residual_inf,
                        neon::project_nonneg_step};
#endif

Isa detect() {
  Isa best = Isa::scalar;
#if defined(MICROCONTACT_HAVE_AVX2)
  if (isa_available(Isa::avx2)) best = Isa::avx2;
#endif
#if defined(MICROCONTACT_HAVE_NEON)
  best = Isa::neon;
#endif
  if (const char* env = std::getenv("MICROCONTACT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
    if (std::strcmp(env, "neon") == 0 && isa_available(Isa::neon)) return Isa::neon;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(MICROCONTACT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MICROCONTACT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  switch (isa) {
#if defined(MICROCONTACT_HAVE_AVX2)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(MICROCONTACT_HAVE_NEON)
    case Isa::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const Kernels& kernels() { return kernels_for(current().load(std::memory_order_relaxed)); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (!isa_available(isa)) return false;
  current().store(isa);
  return true;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    default:
      return "scalar";
  }
}

}  // namespace microcontact::simd

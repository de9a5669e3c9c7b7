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

#pragma once

#include <cstddef>

namespace microcontact::simd {

#define MICROCONTACT_DECLARE_KERNELS(ns)                                                       \
  namespace ns {                                                                               \
  double dot(const double* x, const double* y, std::size_t n);                                 \
  void axpy(double a, const double* x, double* y, std::size_t n);                              \
  void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,              \
            const double* x, const double* b, double* y);                                      \
  double min_residual_inf(const double* w, const double* l, std::size_t n);                    \
  double project_nonneg_step(double* l, const double* g, double beta, std::size_t n);          \
  }

MICROCONTACT_DECLARE_KERNELS(avx2)
MICROCONTACT_DECLARE_KERNELS(neon)

#undef MICROCONTACT_DECLARE_KERNELS

}  // namespace microcontact::simd

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
#include <string>

namespace microcontact::simd {

enum class Isa { scalar, avx2, neon };

// Dense kernels used by the complementarity solvers. Every kernel has a
// scalar reference; vector variants are selected once at startup and can be
// forced with MICROCONTACT_SIMD=scalar|avx2|neon.
struct Kernels {
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = A x + b, A row-major with leading dimension lda.
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
               const double* x, const double* b, double* y);
  // max_i |min(w_i, l_i)|
  double (*min_residual_inf)(const double* w, const double* l, std::size_t n);
  // l_i = max(0, l_i + beta * g_i), returns max_i |l_new - l_old|
  double (*project_nonneg_step)(double* l, const double* g, double beta, std::size_t n);
};

const Kernels& kernels();
Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Returns false if the requested instruction set is not available.
bool set_isa(Isa isa);
const Kernels& kernels_for(Isa isa);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda, const double* x,
          const double* b, double* y);
double min_residual_inf(const double* w, const double* l, std::size_t n);
double project_nonneg_step(double* l, const double* g, double beta, std::size_t n);
}  // namespace scalar

}  // namespace microcontact::simd

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

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "kernels_isa.hpp"

namespace microcontact::simd::neon {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), a));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda, const double* x,
          const double* b, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot(a + r * lda, x, cols) + (b ? b[r] : 0.0);
  }
}

double min_residual_inf(const double* w, const double* l, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    m = vmaxq_f64(m, vabsq_f64(vminq_f64(vld1q_f64(w + i), vld1q_f64(l + i))));
  }
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::abs(std::min(w[i], l[i])));
  return r;
}

double project_nonneg_step(double* l, const double* g, double beta, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t change = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t old = vld1q_f64(l + i);
    float64x2_t next = vmaxq_f64(zero, vaddq_f64(old, vmulq_n_f64(vld1q_f64(g + i), beta)));
    change = vmaxq_f64(change, vabsq_f64(vsubq_f64(next, old)));
    vst1q_f64(l + i, next);
  }
  double c = vmaxvq_f64(change);
  for (; i < n; ++i) {
    double next = std::max(0.0, l[i] + beta * g[i]);
    c = std::max(c, std::abs(next - l[i]));
    l[i] = next;
  }
  return c;
}

}  // namespace microcontact::simd::neon

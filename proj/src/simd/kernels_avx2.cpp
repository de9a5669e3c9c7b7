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

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_isa.hpp"

namespace microcontact::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
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
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_min_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(l + i));
    m = _mm256_max_pd(m, _mm256_and_pd(v, kAbsMask));
  }
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(std::min(w[i], l[i])));
  return r;
}

double project_nonneg_step(double* l, const double* g, double beta, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d zero = _mm256_setzero_pd();
  __m256d change = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d old = _mm256_loadu_pd(l + i);
    // mul + add kept separate so results match the scalar path bit for bit
    __m256d next = _mm256_max_pd(zero, _mm256_add_pd(old, _mm256_mul_pd(vb, _mm256_loadu_pd(g + i))));
    change = _mm256_max_pd(change, _mm256_and_pd(_mm256_sub_pd(next, old), kAbsMask));
    _mm256_storeu_pd(l + i, next);
  }
  double c = hmax(change);
  for (; i < n; ++i) {
    double next = std::max(0.0, l[i] + beta * g[i]);
    c = std::max(c, std::abs(next - l[i]));
    l[i] = next;
  }
  return c;
}

}  // namespace microcontact::simd::avx2

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

#include <algorithm>
#include <cmath>

#include "microcontact/simd/kernels.hpp"

namespace microcontact::simd::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda, const double* x,
          const double* b, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot(a + r * lda, x, cols) + (b ? b[r] : 0.0);
  }
}

double min_residual_inf(const double* w, const double* l, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(std::min(w[i], l[i])));
  return m;
}

double project_nonneg_step(double* l, const double* g, double beta, std::size_t n) {
  double change = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double next = std::max(0.0, l[i] + beta * g[i]);
    change = std::max(change, std::abs(next - l[i]));
    l[i] = next;
  }
  return change;
}

}  // namespace microcontact::simd::scalar

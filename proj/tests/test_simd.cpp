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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "microcontact/simd/kernels.hpp"

using namespace microcontact::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST_CASE("vector kernels agree with the scalar reference") {
  std::mt19937_64 rng(7);
  const auto& ref = kernels_for(Isa::scalar);
  for (Isa isa : vector_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = kernels_for(isa);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101, 1000}) {
      CAPTURE(n);
      const auto x = random_vector(rng, n), y = random_vector(rng, n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
      CHECK(std::abs(k.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= 1e-14 * mag + 1e-300);

      auto y1 = y, y2 = y;
      k.axpy(0.37, x.data(), y1.data(), n);
      ref.axpy(0.37, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 4e-16 * (std::abs(y2[i]) + 1.0));

      // residual and projection are comparisons and single roundings: exact
      CHECK(k.min_residual_inf(x.data(), y.data(), n) == ref.min_residual_inf(x.data(), y.data(), n));
      auto l1 = random_vector(rng, n, 0.0, 1.0);
      auto l2 = l1;
      const double c1 = k.project_nonneg_step(l1.data(), x.data(), 0.8, n);
      const double c2 = ref.project_nonneg_step(l2.data(), x.data(), 0.8, n);
      CHECK(c1 == c2);
      CHECK(l1 == l2);
    }
  }
}

TEST_CASE("gemv matches row dot products") {
  std::mt19937_64 rng(11);
  const std::size_t rows = 13, cols = 21, lda = 24;
  const auto a = random_vector(rng, rows * lda), x = random_vector(rng, cols), b = random_vector(rng, rows);
  std::vector<double> ys(rows), yv(rows);
  kernels_for(Isa::scalar).gemv(a.data(), rows, cols, lda, x.data(), b.data(), ys.data());
  for (std::size_t r = 0; r < rows; ++r) {
    double s = b[r];
    for (std::size_t c = 0; c < cols; ++c) s += a[r * lda + c] * x[c];
    CHECK(std::abs(ys[r] - s) <= 1e-14);
  }
  for (Isa isa : vector_isas()) {
    kernels_for(isa).gemv(a.data(), rows, cols, lda, x.data(), b.data(), yv.data());
    for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(yv[r] - ys[r]) <= 1e-14);
  }
}

TEST_CASE("projection clamps at zero and reports the largest change") {
  std::vector<double> l{0.5, 0.1, 0.0, 2.0, 0.3};
  const std::vector<double> g{-1.0, -1.0, 1.0, 0.5, 0.0};
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) continue;
    auto v = l;
    const double change = kernels_for(isa).project_nonneg_step(v.data(), g.data(), 0.2, v.size());
    const std::vector<double> expect{0.3, 0.0, 0.2, 2.1, 0.3};
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK(v[1] == 0.0);
    CHECK(change == doctest::Approx(0.2));
  }
}

TEST_CASE("isa selection can be forced to scalar") {
  const Isa before = active_isa();
  REQUIRE(set_isa(Isa::scalar));
  CHECK(active_isa() == Isa::scalar);
  CHECK(kernels().dot == kernels_for(Isa::scalar).dot);
  set_isa(before);
  CHECK(active_isa() == before);
}

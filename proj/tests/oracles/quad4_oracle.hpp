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

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

// Rectangular bilinear elements on a structured grid, assembled densely.
namespace oracle {

inline Eigen::Matrix3d plane_strain_d(double young, double poisson) {
  const double lam = young * poisson / ((1 + poisson) * (1 - 2 * poisson));
  const double mu = young / (2 * (1 + poisson));
  Eigen::Matrix3d d;
  d << lam + 2 * mu, lam, 0, lam, lam + 2 * mu, 0, 0, 0, mu;
  return d;
}

// Element matrix of an axis-aligned hx by hy rectangle, corners ordered
// (0,0), (hx,0), (hx,hy), (0,hy).
inline Eigen::Matrix<double, 8, 8> rect_stiffness(double hx, double hy, const Eigen::Matrix3d& d) {
  const double xs[4] = {-1, 1, 1, -1}, ys[4] = {-1, -1, 1, 1};
  const double g = 1.0 / std::sqrt(3.0);
  Eigen::Matrix<double, 8, 8> k = Eigen::Matrix<double, 8, 8>::Zero();
  for (double xi : {-g, g}) {
    for (double eta : {-g, g}) {
      Eigen::Matrix<double, 3, 8> b = Eigen::Matrix<double, 3, 8>::Zero();
      for (int a = 0; a < 4; ++a) {
        const double dx = 0.25 * xs[a] * (1 + eta * ys[a]) * 2.0 / hx;
        const double dy = 0.25 * ys[a] * (1 + xi * xs[a]) * 2.0 / hy;
        b(0, 2 * a) = dx;
        b(1, 2 * a + 1) = dy;
        b(2, 2 * a) = dy;
        b(2, 2 * a + 1) = dx;
      }
      k += b.transpose() * d * b * (hx * hy / 4.0);
    }
  }
  return k;
}

inline Eigen::MatrixXd grid_stiffness(int nx, int ny, double lx, double ly, const Eigen::Matrix3d& d) {
  const int n = 2 * (nx + 1) * (ny + 1);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  const auto ke = rect_stiffness(lx / nx, ly / ny, d);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c[4] = {j * (nx + 1) + i, j * (nx + 1) + i + 1, (j + 1) * (nx + 1) + i + 1, (j + 1) * (nx + 1) + i};
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) k(2 * c[a / 2] + a % 2, 2 * c[b / 2] + b % 2) += ke(a, b);
      }
    }
  }
  return k;
}

}  // namespace oracle

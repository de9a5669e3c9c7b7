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

#include "microcontact/errors.hpp"
#include "microcontact/fem/quad4.hpp"

namespace microcontact {

namespace {
constexpr double kXi[4] = {-1.0, 1.0, 1.0, -1.0};
constexpr double kEta[4] = {-1.0, -1.0, 1.0, 1.0};
}  // namespace

Eigen::Vector4d quad4_shape(double xi, double eta) {
  Eigen::Vector4d n;
  for (int a = 0; a < 4; ++a) n[a] = 0.25 * (1.0 + kXi[a] * xi) * (1.0 + kEta[a] * eta);
  return n;
}

Quad4Strain quad4_strain_matrix(const std::array<Point, 4>& corners, double xi, double eta, double* det_j) {
  Eigen::Matrix<double, 2, 4> dn;  // d/dxi, d/deta
  for (int a = 0; a < 4; ++a) {
    dn(0, a) = 0.25 * kXi[a] * (1.0 + kEta[a] * eta);
    dn(1, a) = 0.25 * kEta[a] * (1.0 + kXi[a] * xi);
  }
  Eigen::Matrix2d j = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a) {
    j(0, 0) += dn(0, a) * corners[a].x();
    j(0, 1) += dn(0, a) * corners[a].y();
    j(1, 0) += dn(1, a) * corners[a].x();
    j(1, 1) += dn(1, a) * corners[a].y();
  }
  const double det = j.determinant();
  if (!(det > 0.0)) throw AssemblyError("quadrilateral with non-positive Jacobian");
  if (det_j) *det_j = det;
  const Eigen::Matrix<double, 2, 4> dx = j.inverse() * dn;
  Quad4Strain b = Quad4Strain::Zero();
  for (int a = 0; a < 4; ++a) {
    b(0, 2 * a) = dx(0, a);
    b(1, 2 * a + 1) = dx(1, a);
    b(2, 2 * a) = dx(1, a);
    b(2, 2 * a + 1) = dx(0, a);
  }
  return b;
}

std::vector<QuadraturePoint> macro_quadrature(const MacroMesh& mesh) {
  const double g = 1.0 / std::sqrt(3.0);
  const double pts[4][2] = {{-g, -g}, {g, -g}, {g, g}, {-g, g}};
  std::vector<QuadraturePoint> out;
  out.reserve(4 * mesh.quads.size());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    std::array<Point, 4> c;
    for (int a = 0; a < 4; ++a) c[a] = mesh.nodes[mesh.quads[e][a]];
    for (int q = 0; q < 4; ++q) {
      QuadraturePoint qp;
      qp.element = e;
      qp.local = q;
      qp.xi = {pts[q][0], pts[q][1]};
      double det = 0.0;
      qp.b = quad4_strain_matrix(c, pts[q][0], pts[q][1], &det);
      qp.weight = det;
      const Eigen::Vector4d n = quad4_shape(pts[q][0], pts[q][1]);
      for (int a = 0; a < 4; ++a) qp.x += n[a] * c[a];
      out.push_back(qp);
    }
  }
  return out;
}

}  // namespace microcontact

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
#include <vector>

#include <Eigen/Dense>

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

using Quad4Strain = Eigen::Matrix<double, 3, 8>;

// Bilinear quadrilateral shape functions at natural coordinates (xi, eta).
Eigen::Vector4d quad4_shape(double xi, double eta);

// Strain matrix and Jacobian determinant at (xi, eta).
Quad4Strain quad4_strain_matrix(const std::array<Point, 4>& corners, double xi, double eta,
                                double* det_j);

struct QuadraturePoint {
  int element = 0;
  int local = 0;
  Point xi = Point::Zero();
  Point x = Point::Zero();
  double weight = 0.0;  // Gauss weight times det J
  Quad4Strain b = Quad4Strain::Zero();
};

// 2x2 Gauss rule on every element, element-major.
std::vector<QuadraturePoint> macro_quadrature(const MacroMesh& mesh);

}  // namespace microcontact

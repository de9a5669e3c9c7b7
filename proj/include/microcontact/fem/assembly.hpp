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

#include <vector>

#include <Eigen/Dense>

#include "microcontact/fem/cell_space.hpp"
#include "microcontact/fem/elasticity.hpp"
#include "microcontact/mesh/cell_mesh.hpp"
#include "microcontact/tensor.hpp"

namespace microcontact {

// Constant-strain triangle B matrix (3x6, engineering shear) and area.
Eigen::Matrix<double, 3, 6> triangle_strain_matrix(const Point& p0, const Point& p1, const Point& p2,
                                                   double* area = nullptr);

// Stiffness on full nodal DOFs, scaled by 1/|Y|.
SparseMatrix assemble_full_stiffness(const PeriodicCellMesh& mesh, const ElasticTensor& d);

// Reduced stiffness T^T K T.
SparseMatrix assemble_cell_stiffness(const PeriodicCellMesh& mesh, const ElasticTensor& d,
                                     const CellSpace& space);

// Nodal values of E * (y - cell center).
Eigen::VectorXd affine_field(const SymTensor2& strain, const PeriodicCellMesh& mesh);

// Kinematically admissible macro lift: the affine field on elastic nodes; rigid
// nodes follow the translation of the affine field at the rigid centroid.
Eigen::VectorXd macro_lift(const SymTensor2& strain, const PeriodicCellMesh& mesh,
                           const CellSpace& space);

// Reduced load -T^T K u for a full displacement u.
Eigen::VectorXd stress_load(const SparseMatrix& full_stiffness, const CellSpace& space,
                            const Eigen::VectorXd& u_full);

std::vector<SymTensor2> element_strains(const PeriodicCellMesh& mesh, const Eigen::VectorXd& u_full);

// |Y|^-1 times the integral of the stress over the solid part.
SymTensor2 average_stress(const PeriodicCellMesh& mesh, const ElasticTensor& d,
                          const Eigen::VectorXd& u_full);

}  // namespace microcontact

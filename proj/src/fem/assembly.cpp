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
#include "microcontact/fem/assembly.hpp"

namespace microcontact {

Eigen::Matrix<double, 3, 6> triangle_strain_matrix(const Point& p0, const Point& p1, const Point& p2,
                                                   double* area) {
  const double two_a = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  if (area) *area = 0.5 * two_a;
  const double b[3] = {p1.y() - p2.y(), p2.y() - p0.y(), p0.y() - p1.y()};
  const double c[3] = {p2.x() - p1.x(), p0.x() - p2.x(), p1.x() - p0.x()};
  Eigen::Matrix<double, 3, 6> B = Eigen::Matrix<double, 3, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    B(0, 2 * i) = b[i] / two_a;
    B(1, 2 * i + 1) = c[i] / two_a;
    B(2, 2 * i) = c[i] / two_a;
    B(2, 2 * i + 1) = b[i] / two_a;
  }
  return B;
}

SparseMatrix assemble_full_stiffness(const PeriodicCellMesh& mesh, const ElasticTensor& d) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(36 * mesh.triangles.size());
  const double scale = 1.0 / mesh.cell_area();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    double area = 0.0;
    const auto B = triangle_strain_matrix(mesh.nodes[v[0]], mesh.nodes[v[1]], mesh.nodes[v[2]], &area);
    if (!(area > 0.0)) throw AssemblyError("triangle " + std::to_string(t) + " has non-positive area");
    const Eigen::Matrix<double, 6, 6> ke = (scale * area) * B.transpose() * d.voigt * B;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) trip.emplace_back(2 * v[i / 2] + i % 2, 2 * v[j / 2] + j % 2, ke(i, j));
    }
  }
  SparseMatrix k(2 * mesh.num_nodes(), 2 * mesh.num_nodes());
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

SparseMatrix assemble_cell_stiffness(const PeriodicCellMesh& mesh, const ElasticTensor& d,
                                     const CellSpace& space) {
  const SparseMatrix k = assemble_full_stiffness(mesh, d);
  SparseMatrix a = space.expansion().transpose() * k * space.expansion();
  a.prune(0.0);
  return a;
}

Eigen::VectorXd affine_field(const SymTensor2& strain, const PeriodicCellMesh& mesh) {
  Eigen::VectorXd u(2 * mesh.num_nodes());
  const Point c = mesh.cell_center();
  for (int i = 0; i < mesh.num_nodes(); ++i) u.segment<2>(2 * i) = strain.apply(mesh.nodes[i] - c);
  return u;
}

Eigen::VectorXd macro_lift(const SymTensor2& strain, const PeriodicCellMesh& mesh, const CellSpace& space) {
  Eigen::VectorXd u = affine_field(strain, mesh);
  if (space.has_rigid_body()) {
    const Eigen::Vector2d shift = strain.apply(space.rigid_center() - mesh.cell_center());
    for (int r : mesh.rigid_nodes) u.segment<2>(2 * r) = shift;
  }
  return u;
}

Eigen::VectorXd stress_load(const SparseMatrix& full_stiffness, const CellSpace& space,
                            const Eigen::VectorXd& u_full) {
  return -(space.expansion().transpose() * (full_stiffness * u_full));
}

std::vector<SymTensor2> element_strains(const PeriodicCellMesh& mesh, const Eigen::VectorXd& u_full) {
  std::vector<SymTensor2> out(mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    const auto B = triangle_strain_matrix(mesh.nodes[v[0]], mesh.nodes[v[1]], mesh.nodes[v[2]]);
    Eigen::Matrix<double, 6, 1> ue;
    for (int k = 0; k < 3; ++k) ue.segment<2>(2 * k) = u_full.segment<2>(2 * v[k]);
    out[t] = strain_from_voigt(B * ue);
  }
  return out;
}

SymTensor2 average_stress(const PeriodicCellMesh& mesh, const ElasticTensor& d, const Eigen::VectorXd& u_full) {
  const auto strains = element_strains(mesh, u_full);
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    s += mesh.signed_area(t) * (d.voigt * strain_to_voigt(strains[t]));
  }
  return stress_from_voigt(s / mesh.cell_area());
}

}  // namespace microcontact

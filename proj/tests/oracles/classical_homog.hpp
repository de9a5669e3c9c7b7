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

// Classical periodic homogenization of a contact-free cell, written
// independently of the library: its own element matrices from Lame
// constants, periodicity and inclusion rigidity as Lagrange multipliers and a
// pinned node instead of the mean condition. Dense, small meshes only.
#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "microcontact/mesh/cell_mesh.hpp"

namespace oracle {

struct ClassicalResult {
  Eigen::Matrix3d dh_energy = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d dh_stress = Eigen::Matrix3d::Zero();  // column a: average stress of mode a (pore-free inclusions only)
  std::array<Eigen::VectorXd, 3> total;                  // nodal displacement of mode a, nodal mean removed
};

inline Eigen::Matrix3d lame_voigt(double e, double nu) {
  const double lambda = e * nu / ((1 + nu) * (1 - 2 * nu)), mu = e / (2 * (1 + nu));
  Eigen::Matrix3d d;
  d << lambda + 2 * mu, lambda, 0, lambda, lambda + 2 * mu, 0, 0, 0, mu;
  return d;
}

inline ClassicalResult classical_homogenization(const microcontact::PeriodicCellMesh& mesh, double e, double nu) {
  const int nn = mesh.num_nodes();
  const int ndof = 2 * nn;
  const Eigen::Matrix3d d = lame_voigt(e, nu);
  const double cell_area = mesh.cell_size.x() * mesh.cell_size.y();

  // gradients of the linear shape functions from the inverse of the
  // coefficient matrix [1 x y]
  auto gradients = [&](const std::array<int, 3>& t, double& area) {
    Eigen::Matrix3d p;
    for (int k = 0; k < 3; ++k) p.row(k) << 1.0, mesh.nodes[t[k]].x(), mesh.nodes[t[k]].y();
    area = 0.5 * std::abs(p.determinant());
    const Eigen::Matrix3d inv = p.inverse();
    return Eigen::Matrix<double, 2, 3>(inv.bottomRows(2));
  };
  auto strain_op = [&](const std::array<int, 3>& t, double& area) {
    const auto gr = gradients(t, area);
    Eigen::Matrix<double, 3, 6> b = Eigen::Matrix<double, 3, 6>::Zero();
    for (int k = 0; k < 3; ++k) {
      b(0, 2 * k) = gr(0, k);
      b(1, 2 * k + 1) = gr(1, k);
      b(2, 2 * k) = gr(1, k);
      b(2, 2 * k + 1) = gr(0, k);
    }
    return b;
  };

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(ndof, ndof);
  for (const auto& t : mesh.triangles) {
    double area = 0;
    const auto b = strain_op(t, area);
    const Eigen::Matrix<double, 6, 6> ke = area / cell_area * b.transpose() * d * b;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) k(2 * t[i / 2] + i % 2, 2 * t[j / 2] + j % 2) += ke(i, j);
    }
  }

  const microcontact::Point c = 0.5 * mesh.cell_size;
  microcontact::Point rc = microcontact::Point::Zero();
  for (int r : mesh.rigid_nodes) rc += mesh.nodes[r];
  if (!mesh.rigid_nodes.empty()) rc /= static_cast<double>(mesh.rigid_nodes.size());

  const int nrigid = mesh.rigid_nodes.empty() ? 0 : 3;
  const int ncons = 2 * static_cast<int>(mesh.periodic_pairs.size()) + 2 * static_cast<int>(mesh.rigid_nodes.size()) + 2;
  const int nsys = ndof + nrigid + ncons;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nsys, nsys);
  kkt.topLeftCorner(ndof, ndof) = k;
  int row = ndof + nrigid;
  auto constrain = [&](int col, double v) {
    kkt(row, col) += v;
    kkt(col, row) += v;
  };
  for (const auto& p : mesh.periodic_pairs) {
    for (int comp = 0; comp < 2; ++comp) {
      constrain(2 * p.slave + comp, 1.0);
      constrain(2 * p.master + comp, -1.0);
      ++row;
    }
  }
  std::vector<int> rigid_rows;
  for (int r : mesh.rigid_nodes) {
    const microcontact::Point y = mesh.nodes[r] - rc;
    // w_r - t - theta * (-y_y, y_x) = -Pi(y_r)
    constrain(2 * r, 1.0);
    constrain(ndof, -1.0);
    constrain(ndof + 2, y.y());
    rigid_rows.push_back(row++);
    constrain(2 * r + 1, 1.0);
    constrain(ndof + 1, -1.0);
    constrain(ndof + 2, -y.x());
    rigid_rows.push_back(row++);
  }
  const int pin = mesh.periodic_pairs.empty() ? 0 : mesh.periodic_pairs.back().master;
  constrain(2 * pin, 1.0);
  ++row;
  constrain(2 * pin + 1, 1.0);
  ++row;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(kkt);
  ClassicalResult out;
  std::array<Eigen::VectorXd, 3> chi;
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix2d ea = Eigen::Matrix2d::Zero();
    if (a == 0) ea(0, 0) = 1;
    if (a == 1) ea(1, 1) = 1;
    if (a == 2) ea(0, 1) = ea(1, 0) = 0.5;
    Eigen::VectorXd pi(ndof);
    for (int i = 0; i < nn; ++i) pi.segment<2>(2 * i) = ea * (mesh.nodes[i] - c);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nsys);
    rhs.head(ndof) = -k * pi;
    for (std::size_t j = 0; j < mesh.rigid_nodes.size(); ++j) {
      const int r = mesh.rigid_nodes[j];
      rhs[rigid_rows[2 * j]] = -pi[2 * r];
      rhs[rigid_rows[2 * j + 1]] = -pi[2 * r + 1];
    }
    const Eigen::VectorXd x = lu.solve(rhs);
    chi[a] = pi + x.head(ndof);
    out.total[a] = chi[a];
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (int i = 0; i < nn; ++i) mean += chi[a].segment<2>(2 * i);
    mean /= nn;
    for (int i = 0; i < nn; ++i) out.total[a].segment<2>(2 * i) -= mean;

    Eigen::Vector3d s = Eigen::Vector3d::Zero();
    for (const auto& t : mesh.triangles) {
      double area = 0;
      const auto b = strain_op(t, area);
      Eigen::Matrix<double, 6, 1> ue;
      for (int q = 0; q < 3; ++q) ue.segment<2>(2 * q) = chi[a].segment<2>(2 * t[q]);
      s += area * d * (b * ue);
    }
    out.dh_stress.col(a) = s / cell_area;
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out.dh_energy(a, b) = chi[a].dot(k * chi[b]);
  }
  return out;
}

}  // namespace oracle

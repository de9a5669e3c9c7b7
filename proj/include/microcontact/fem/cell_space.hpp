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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

using SparseMatrix = Eigen::SparseMatrix<double>;
using MeanOperator = Eigen::Matrix<double, 2, Eigen::Dynamic>;

// Reduced fluctuation space of a periodic cell. Full vectors hold (ux, uy)
// per node; reduced vectors drop periodic slaves and collapse rigid nodes to
// (tx, ty, theta) about the rigid centroid. T maps reduced -> full.
class CellSpace {
 public:
  explicit CellSpace(const PeriodicCellMesh& mesh);

  int num_full() const { return num_full_; }
  int num_reduced() const { return num_reduced_; }
  const SparseMatrix& expansion() const { return expansion_; }
  Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const { return expansion_ * reduced; }
  Eigen::VectorXd adjoint(const Eigen::VectorXd& full) const { return expansion_.transpose() * full; }

  // Lumped Y_s-mean of the two displacement components.
  const MeanOperator& mean_operator() const { return mean_; }
  Eigen::Vector2d mean_full(const Eigen::VectorXd& full) const;
  const Eigen::VectorXd& lumped_weights() const { return weights_; }

  bool has_rigid_body() const { return rigid_offset_ >= 0; }
  int rigid_offset() const { return rigid_offset_; }
  const Point& rigid_center() const { return rigid_center_; }
  // Reduced column of node component (ux=0, uy=1); -1 for rigid nodes.
  int column(int node, int comp) const { return column_[2 * node + comp]; }

 private:
  int num_full_ = 0;
  int num_reduced_ = 0;
  int rigid_offset_ = -1;
  Point rigid_center_ = Point::Zero();
  std::vector<int> column_;
  SparseMatrix expansion_;
  MeanOperator mean_;
  Eigen::VectorXd weights_;
};

}  // namespace microcontact

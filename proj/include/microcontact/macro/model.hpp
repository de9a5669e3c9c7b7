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

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "microcontact/fem/quad4.hpp"
#include "microcontact/mesh/cell_mesh.hpp"
#include "microcontact/tensor.hpp"

namespace microcontact {

using MacroMatrix = Eigen::SparseMatrix<double>;

struct FixedDof {
  Side side = Side::bottom;
  int component = 0;
  double value = 0.0;

  bool operator==(const FixedDof&) const = default;
};

// All DOFs of the given component on a side move together.
struct TiedDof {
  Side side = Side::right;
  int component = 0;

  bool operator==(const TiedDof&) const = default;
};

// Force per unit length on a side.
struct Traction {
  Side side = Side::top;
  Point value = Point::Zero();

  bool operator==(const Traction& o) const { return side == o.side && value == o.value; }
};

struct MacroBoundary {
  std::vector<FixedDof> fixed;
  std::vector<TiedDof> tied;
  std::vector<Traction> tractions;

  bool operator==(const MacroBoundary&) const = default;
};

// Nodal DOFs (2 per node) in terms of free unknowns: u = Q u_free + u_D.
class DofMap {
 public:
  DofMap() = default;
  DofMap(const MacroMesh& mesh, const MacroBoundary& bc);

  int num_full() const { return static_cast<int>(free_index_.size()); }
  int num_free() const { return num_free_; }
  // Free unknown of a nodal DOF, -1 if prescribed.
  int index(int node, int component) const { return free_index_[2 * node + component]; }
  const Eigen::VectorXd& prescribed() const { return prescribed_; }
  const MacroMatrix& expansion() const { return q_; }

  Eigen::VectorXd expand(const Eigen::VectorXd& free) const { return q_ * free + prescribed_; }
  Eigen::VectorXd expand_increment(const Eigen::VectorXd& free) const { return q_ * free; }
  Eigen::VectorXd restrict(const Eigen::VectorXd& full) const { return q_.transpose() * full; }

 private:
  std::vector<int> free_index_;
  int num_free_ = 0;
  Eigen::VectorXd prescribed_;
  MacroMatrix q_;
};

// Macro discretization: mesh, 2x2 Gauss points, DOF map and load.
class MacroModel {
 public:
  MacroModel(MacroMesh mesh, MacroBoundary bc);

  const MacroMesh& mesh() const { return mesh_; }
  const MacroBoundary& boundary() const { return bc_; }
  const DofMap& dofs() const { return dofs_; }
  const std::vector<QuadraturePoint>& quadrature() const { return quad_; }
  int num_points() const { return static_cast<int>(quad_.size()); }

  // Stacked Voigt strains (engineering shear) of all points from nodal DOFs.
  const MacroMatrix& full_strain_operator() const { return b_full_; }
  const MacroMatrix& strain_operator() const { return b_free_; }
  std::vector<SymTensor2> strains(const Eigen::VectorXd& u_full) const;

  // Consistent nodal forces of the tractions at unit load factor.
  const Eigen::VectorXd& external_load_full() const { return f_full_; }
  Eigen::VectorXd external_load() const { return dofs_.restrict(f_full_); }

  // sum_q w_q B_q^T sigma_q over all nodal DOFs.
  Eigen::VectorXd internal_force_full(std::span<const SymTensor2> sigma) const;
  // sum_q w_q B_q^T D_q B_q u over all nodal DOFs.
  Eigen::VectorXd tangent_force_full(std::span<const Eigen::Matrix3d> dh, const Eigen::VectorXd& u_full) const;

 private:
  MacroMesh mesh_;
  MacroBoundary bc_;
  DofMap dofs_;
  std::vector<QuadraturePoint> quad_;
  MacroMatrix b_full_, b_free_;
  Eigen::VectorXd f_full_;
};

// K = sum_q w_q B_q^T D_q B_q on the free DOFs.
MacroMatrix assemble_macro_tangent(const MacroModel& model, std::span<const Eigen::Matrix3d> dh);

// r = f - sum_q w_q B_q^T sigma_q on the free DOFs.
Eigen::VectorXd out_of_balance(const MacroModel& model, const Eigen::VectorXd& f, std::span<const SymTensor2> sigma);

}  // namespace microcontact

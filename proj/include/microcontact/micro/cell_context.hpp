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
#include <memory>

#include <Eigen/Dense>

#include "microcontact/fem/assembly.hpp"
#include "microcontact/fem/cell_space.hpp"
#include "microcontact/fem/elasticity.hpp"
#include "microcontact/fem/factorization.hpp"
#include "microcontact/mesh/pairing.hpp"
#include "microcontact/micro/gap_operator.hpp"

namespace microcontact {

// Everything about a cell that does not depend on the load: operators,
// factorization, Schur complement and the response to unit macro strains.
// Built once and shared read-only by all quadrature points.
class CellContext {
 public:
  CellContext(PeriodicCellMesh mesh, const ElasticTensor& material);

  const PeriodicCellMesh& mesh() const { return mesh_; }
  const ElasticTensor& material() const { return material_; }
  const CellSpace& space() const { return space_; }
  const SparseMatrix& full_stiffness() const { return full_stiffness_; }
  const SparseMatrix& stiffness() const { return stiffness_; }
  const Factorization& factorization() const { return factor_; }
  const ContactPairing& pairing() const { return pairing_; }
  const GapOperator& gap() const { return gap_; }
  const DenseRowMatrix& schur() const { return schur_.c; }
  const Eigen::MatrixXd& a_inv_gt() const { return schur_.a_inv_gt; }
  int num_records() const { return gap_.size(); }

  // Macro lift of a unit strain mode and derived quantities.
  const Eigen::VectorXd& mode_lift(int a) const { return mode_lift_[a]; }
  const Eigen::VectorXd& mode_load(int a) const { return mode_load_[a]; }          // stress_load(lift_a)
  const Eigen::VectorXd& mode_response(int a) const { return mode_response_[a]; }  // A^-1 mode_load
  const Eigen::VectorXd& mode_opening(int a) const { return mode_opening_[a]; }    // G lift_a
  const Eigen::VectorXd& mode_force(int a) const { return mode_force_[a]; }        // K lift_a

  Eigen::VectorXd lift(const SymTensor2& strain) const;

  // Macro stress of a micro state: the derivative of the cell energy with
  // respect to the macro strain, a(u, lift_b) - lambda . G lift_b.
  SymTensor2 effective_stress(const Eigen::VectorXd& u_mic_full, const Eigen::VectorXd& lambda) const;

 private:
  PeriodicCellMesh mesh_;
  ElasticTensor material_;
  CellSpace space_;
  SparseMatrix full_stiffness_;
  SparseMatrix stiffness_;
  Factorization factor_;
  ContactPairing pairing_;
  GapOperator gap_;
  SchurComplement schur_;
  std::array<Eigen::VectorXd, 3> mode_lift_, mode_load_, mode_response_, mode_opening_, mode_force_;
};

using CellContextPtr = std::shared_ptr<const CellContext>;

}  // namespace microcontact

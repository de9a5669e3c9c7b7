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

#include "microcontact/fem/cell_space.hpp"
#include "microcontact/fem/factorization.hpp"
#include "microcontact/mesh/pairing.hpp"

namespace microcontact {

using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using DenseRowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Normal opening across each contact record: row i gives
// n_i . (u(plus point) - u(minus point)).
struct GapOperator {
  RowSparse full;     // records x full DOFs
  RowSparse reduced;  // full * T
  Eigen::VectorXd ref_offset;

  int size() const { return static_cast<int>(ref_offset.size()); }
  // Opening of the deformed configuration, >= 0 when admissible.
  Eigen::VectorXd opening(const Eigen::VectorXd& u_full) const { return ref_offset + full * u_full; }
};

GapOperator assemble_gap_operator(const ContactPairing& pairing, const PeriodicCellMesh& mesh,
                                  const CellSpace& space);

struct SchurComplement {
  DenseRowMatrix c;        // G A^-1 G^T
  Eigen::MatrixXd a_inv_gt;  // A^-1 G^T, reduced DOFs x records
};

SchurComplement assemble_schur(const GapOperator& gap, const Factorization& factor);

// Opening that the fluctuation update would produce with zero multipliers:
// h = ref + G u_prev + G A^-1 rhs.
Eigen::VectorXd compute_h(const Factorization& factor, const GapOperator& gap, const Eigen::VectorXd& stress_rhs,
                          const Eigen::VectorXd& u_prev_full);

// Fluctuation increment A^-1 (rhs + G^T lambda).
Eigen::VectorXd recover_fluctuation(const Factorization& factor, const GapOperator& gap,
                                    const Eigen::VectorXd& lambda, const Eigen::VectorXd& stress_rhs);

}  // namespace microcontact

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

#include <memory>

#include <Eigen/Dense>

#include "microcontact/fem/cell_space.hpp"

namespace microcontact {

// Solves A x = b - M^T mu, M x = 0 for the reduced cell stiffness A, whose
// kernel is the two constant translations and M the mean operator of the
// space. The incompatible part of b is absorbed by mu, so solve() acts as the
// symmetric constrained inverse. Immutable and safe to share between threads.
class Factorization {
 public:
  Factorization(const SparseMatrix& a, const CellSpace& space);

  int dimension() const;
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace microcontact

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

#include "microcontact/tensor.hpp"

namespace microcontact {

// Effective elasticity of a cell with a frozen set of closed contact records.
struct HomogenizedTangent {
  Eigen::Matrix3d dh = Eigen::Matrix3d::Zero();  // Voigt, engineering shear
  std::array<Eigen::VectorXd, 3> correctors;     // reduced DOFs
  std::vector<int> active_used;
  int deflated = 0;
};

// Linearized gap of monitored records: gap_i(E + dE) ~ s_tilde_i + p_hat_i : dE.
struct ContactSensitivity {
  std::vector<int> records;
  std::vector<SymTensor2> p_hat;
  std::vector<double> s_tilde;

  int size() const { return static_cast<int>(records.size()); }
};

}  // namespace microcontact

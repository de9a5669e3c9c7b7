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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "microcontact/homog/types.hpp"
#include "microcontact/micro/cell_context.hpp"

namespace microcontact {

// Characteristic responses to the unit strain modes with the records in
// `active` held closed (bilateral). Redundant closed records are deflated.
struct Correctors {
  std::array<Eigen::VectorXd, 3> w;  // reduced DOFs
  Eigen::Matrix<double, Eigen::Dynamic, 3> multipliers;
  std::vector<int> active;
  int deflated = 0;
};

Correctors solve_correctors(const CellContext& ctx, std::span<const int> active);

// D^H_ab = a(lift_a + T w_a, lift_b + T w_b). Throws ConsistencyError if the
// computed matrix is not symmetric to 1e-9 relative.
HomogenizedTangent homogenized_tangent(const CellContext& ctx, const Correctors& corr);

// Linearized gaps of the `monitored` records around the state u_mic_full.
ContactSensitivity contact_sensitivity(const CellContext& ctx, const Correctors& corr,
                                       const Eigen::VectorXd& u_mic_full, std::span<const int> monitored);

// Bilateral solve with the records in `active` held closed.
struct FrozenResponse {
  SymTensor2 sigma;
  Eigen::VectorXd u_mic_full;
  Eigen::VectorXd multipliers;  // on `active`
  Eigen::VectorXd opening;      // all records
};

FrozenResponse solve_frozen_contact(const CellContext& ctx, const SymTensor2& strain, std::span<const int> active);

struct TangentCheck {
  double max_rel_error = 0.0;
  std::array<double, 3> rel_error{};
  bool conclusive = true;
};

// Central differences of the macro stress with the active set frozen,
// compared with dh column by column.
TangentCheck effective_stress_tangent_check(const CellContext& ctx, const SymTensor2& strain,
                                            std::span<const int> active, const Eigen::Matrix3d& dh, double delta);

}  // namespace microcontact

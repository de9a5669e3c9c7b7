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

#include <utility>

#include "microcontact/micro/cell_context.hpp"

namespace microcontact {

CellContext::CellContext(PeriodicCellMesh mesh, const ElasticTensor& material)
    : mesh_(std::move(mesh)),
      material_(material),
      space_(mesh_),
      full_stiffness_(assemble_full_stiffness(mesh_, material_)),
      stiffness_(space_.expansion().transpose() * full_stiffness_ * space_.expansion()),
      factor_(stiffness_, space_),
      pairing_(build_contact_pairing(mesh_)),
      gap_(assemble_gap_operator(pairing_, mesh_, space_)),
      schur_(assemble_schur(gap_, factor_)) {
  for (int a = 0; a < 3; ++a) {
    mode_lift_[a] = macro_lift(unit_mode(a), mesh_, space_);
    mode_force_[a] = full_stiffness_ * mode_lift_[a];
    mode_load_[a] = -(space_.expansion().transpose() * mode_force_[a]);
    mode_response_[a] = factor_.solve(mode_load_[a]);
    mode_opening_[a] = gap_.full * mode_lift_[a];
  }
}

Eigen::VectorXd CellContext::lift(const SymTensor2& strain) const {
  const Eigen::Vector3d e = strain_to_voigt(strain);
  return e[0] * mode_lift_[0] + e[1] * mode_lift_[1] + e[2] * mode_lift_[2];
}

SymTensor2 CellContext::effective_stress(const Eigen::VectorXd& u_mic_full, const Eigen::VectorXd& lambda) const {
  Eigen::Vector3d s;
  for (int b = 0; b < 3; ++b) {
    s[b] = u_mic_full.dot(mode_force_[b]);
    if (lambda.size()) s[b] -= lambda.dot(mode_opening_[b]);
  }
  return stress_from_voigt(s);
}

}  // namespace microcontact

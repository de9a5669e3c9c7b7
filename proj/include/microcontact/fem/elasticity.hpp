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

#include "microcontact/tensor.hpp"

namespace microcontact {

// Isotropic plane-strain Hooke tensor in Voigt form (engineering shear).
struct ElasticTensor {
  Eigen::Matrix3d voigt = Eigen::Matrix3d::Zero();
  double young = 0.0;
  double poisson = 0.0;

  SymTensor2 stress(const SymTensor2& strain) const {
    return stress_from_voigt(voigt * strain_to_voigt(strain));
  }
};

// Throws MaterialError unless E > 0 and -1 < nu < 0.5.
ElasticTensor plane_strain_tensor(double young, double poisson);

}  // namespace microcontact

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

#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/fem/elasticity.hpp"

namespace microcontact {

ElasticTensor plane_strain_tensor(double young, double poisson) {
  if (!(young > 0.0)) {
    std::ostringstream os;
    os << "Young's modulus must be positive, got " << young;
    throw MaterialError(os.str());
  }
  if (!(poisson > -1.0) || !(poisson < 0.5)) {
    std::ostringstream os;
    os << "Poisson ratio " << poisson << " outside (-1, 0.5): plane strain is singular"
       << (poisson >= 0.5 ? " for an incompressible material" : "");
    throw MaterialError(os.str());
  }
  const double f = young / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  ElasticTensor d;
  d.young = young;
  d.poisson = poisson;
  d.voigt << f * (1.0 - poisson), f * poisson, 0.0,
             f * poisson, f * (1.0 - poisson), 0.0,
             0.0, 0.0, young / (2.0 * (1.0 + poisson));
  return d;
}

}  // namespace microcontact

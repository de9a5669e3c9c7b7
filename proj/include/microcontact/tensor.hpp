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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace microcontact {

// Symmetric 2x2 tensor. Voigt order is (11, 22, 12); strains use the
// engineering shear 2*e12 in Voigt form, stresses use s12.
struct SymTensor2 {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  SymTensor2() = default;
  SymTensor2(double a, double b, double c) : xx(a), yy(b), xy(c) {}

  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << xx, xy, xy, yy;
    return m;
  }

  Eigen::Vector2d apply(const Eigen::Vector2d& v) const {
    return {xx * v.x() + xy * v.y(), xy * v.x() + yy * v.y()};
  }

  SymTensor2 operator+(const SymTensor2& o) const { return {xx + o.xx, yy + o.yy, xy + o.xy}; }
  SymTensor2 operator-(const SymTensor2& o) const { return {xx - o.xx, yy - o.yy, xy - o.xy}; }
  SymTensor2 operator*(double s) const { return {xx * s, yy * s, xy * s}; }
};

inline double ddot(const SymTensor2& a, const SymTensor2& b) {
  return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

inline Eigen::Vector3d strain_to_voigt(const SymTensor2& e) { return {e.xx, e.yy, 2.0 * e.xy}; }
inline SymTensor2 strain_from_voigt(const Eigen::Vector3d& v) { return {v[0], v[1], 0.5 * v[2]}; }
inline Eigen::Vector3d stress_to_voigt(const SymTensor2& s) { return {s.xx, s.yy, s.xy}; }
inline SymTensor2 stress_from_voigt(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

// Unit strain modes: diag(1,0), diag(0,1) and the unit engineering shear.
inline SymTensor2 unit_mode(int a) {
  switch (a) {
    case 0:
      return {1.0, 0.0, 0.0};
    case 1:
      return {0.0, 1.0, 0.0};
    default:
      return {0.0, 0.0, 0.5};
  }
}

inline double max_abs(const SymTensor2& t) {
  return std::max({std::abs(t.xx), std::abs(t.yy), std::abs(t.xy)});
}

}  // namespace microcontact

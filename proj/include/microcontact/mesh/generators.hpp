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

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

// Unit cell with a thin horizontal slit centered in the cell. The upper slit
// face is tagged plus, the lower face minus.
struct SlitCellParams {
  double slit_width = 0.6;
  double slit_gap = 0.02;
  double target_edge_length = 0.05;

  bool operator==(const SlitCellParams&) const = default;
};

// Unit cell with a circular hole of radius hole_radius holding a rigid circular
// inclusion of radius inclusion_radius. The inclusion is tethered to the matrix
// by two thin elastic spokes on the horizontal axis.
struct RingCellParams {
  double hole_radius = 0.35;
  double inclusion_radius = 0.34;
  double target_edge_length = 0.05;
  double spoke_angle = 0.0;  // radians, the second spoke sits opposite

  bool operator==(const RingCellParams&) const = default;
};

PeriodicCellMesh generate_cell_slit(const SlitCellParams& params);
PeriodicCellMesh generate_cell_ring(const RingCellParams& params);
// Pore-free cell, used for patch tests.
PeriodicCellMesh generate_cell_solid(double target_edge_length);

}  // namespace microcontact

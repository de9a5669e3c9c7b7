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

#include <span>
#include <vector>

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

// Pairs opposite boundary nodes of the cell. The (0,0) corner masters the
// other three corners; left masters right, bottom masters top. Throws
// MeshError listing the first unmatched node.
std::vector<PeriodicPair> match_periodic_pairs(std::span<const Point> nodes, const Point& cell_size,
                                               double tol = 1e-9);

}  // namespace microcontact

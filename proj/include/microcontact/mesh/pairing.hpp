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

#include <vector>

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

// A node (node_a == node_b) or a point on segment [node_a, node_b] at
// parameter `weight` measured from node_a.
struct SidePoint {
  int node_a = -1;
  int node_b = -1;
  double weight = 0.0;

  bool is_node() const { return node_a == node_b; }
  Point position(const PeriodicCellMesh& mesh) const {
    return (1.0 - weight) * mesh.nodes[node_a] + weight * mesh.nodes[node_b];
  }
};

struct ContactRecord {
  double t = 0.0;  // normalized arc length along the plus chains
  SidePoint plus;
  SidePoint minus;
  Point normal = Point::Zero();  // unit, pointing from the minus face to the plus face
  double ref_gap = 0.0;          // normal . (y_plus - y_minus)
  int prev = -1;
  int next = -1;
};

struct ContactPairing {
  std::vector<ContactRecord> records;
  int size() const { return static_cast<int>(records.size()); }
};

// Normal-ray pairing of the plus and minus faces. Rays are cast from every
// face node along its outward normal onto the opposite face; reciprocal
// node-to-node hits are merged. Throws PairingError naming the offending node.
ContactPairing build_contact_pairing(const PeriodicCellMesh& mesh, double tol = 1e-9);

void validate(const ContactPairing& pairing, const PeriodicCellMesh& mesh, double tol = 1e-9);

}  // namespace microcontact

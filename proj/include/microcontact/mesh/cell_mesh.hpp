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

namespace microcontact {

using Point = Eigen::Vector2d;

struct Edge {
  int a = 0;
  int b = 0;
};

// Slave node is the image of master shifted by `shift`.
struct PeriodicPair {
  int master = 0;
  int slave = 0;
  Point shift = Point::Zero();
};

// Triangulated periodic cell. Triangles are counter-clockwise. Pore faces
// carry a plus/minus tag; the remaining pore boundary is `exterior`.
struct PeriodicCellMesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Edge> plus_edges;
  std::vector<Edge> minus_edges;
  std::vector<Edge> exterior_edges;
  std::vector<PeriodicPair> periodic_pairs;
  std::vector<int> rigid_nodes;
  Point cell_size{1.0, 1.0};

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  double cell_area() const { return cell_size.x() * cell_size.y(); }
  Point cell_center() const { return 0.5 * cell_size; }
  double signed_area(int tri) const;
  double solid_area() const;
  std::vector<int> plus_nodes() const;
  std::vector<int> minus_nodes() const;
};

// Throws MeshError on degenerate or inverted triangles, bad node indices,
// overlapping face tags or inconsistent periodic pairs.
void validate(const PeriodicCellMesh& mesh, double tol = 1e-10);

enum class Side { left = 0, right = 1, bottom = 2, top = 3 };

// Structured quadrilateral macro mesh on [0,Lx]x[0,Ly], counter-clockwise quads.
struct MacroMesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 4>> quads;
  std::array<std::vector<int>, 4> side_nodes;
  std::array<std::vector<Edge>, 4> side_edges;
  int nx = 0;
  int ny = 0;
  Point size{1.0, 1.0};

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(quads.size()); }
};

MacroMesh generate_macro_mesh(int nx, int ny, double lx = 1.0, double ly = 1.0);

}  // namespace microcontact

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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

namespace {

std::vector<int> edge_nodes(const std::vector<Edge>& edges) {
  std::vector<int> out;
  out.reserve(2 * edges.size());
  for (const auto& e : edges) {
    out.push_back(e.a);
    out.push_back(e.b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double PeriodicCellMesh::signed_area(int tri) const {
  const auto& t = triangles[tri];
  const Point e1 = nodes[t[1]] - nodes[t[0]];
  const Point e2 = nodes[t[2]] - nodes[t[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double PeriodicCellMesh::solid_area() const {
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t) a += signed_area(t);
  return a;
}

std::vector<int> PeriodicCellMesh::plus_nodes() const { return edge_nodes(plus_edges); }
std::vector<int> PeriodicCellMesh::minus_nodes() const { return edge_nodes(minus_edges); }

void validate(const PeriodicCellMesh& mesh, double tol) {
  const int n = mesh.num_nodes();
  auto check_node = [n](int id, const char* what) {
    if (id < 0 || id >= n) {
      std::ostringstream os;
      os << what << " references node " << id << " outside [0," << n << ")";
      throw MeshError(os.str());
    }
  };
  const double area_tol = tol * mesh.cell_area();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangles[t]) check_node(v, "triangle");
    const double a = mesh.signed_area(t);
    if (a <= area_tol) {
      std::ostringstream os;
      os << "triangle " << t << " is " << (a < -area_tol ? "inverted" : "degenerate")
         << " (signed area " << a << ")";
      throw MeshError(os.str());
    }
  }

  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      ++edge_use[{std::min(a, b), std::max(a, b)}];
    }
  }
  std::set<std::pair<int, int>> tagged;
  auto check_edges = [&](const std::vector<Edge>& edges, const char* tag) {
    for (const auto& e : edges) {
      check_node(e.a, tag);
      check_node(e.b, tag);
      std::pair<int, int> key{std::min(e.a, e.b), std::max(e.a, e.b)};
      auto it = edge_use.find(key);
      if (it == edge_use.end() || it->second != 1) {
        std::ostringstream os;
        os << tag << " edge (" << e.a << "," << e.b << ") is not a boundary edge of the mesh";
        throw MeshError(os.str());
      }
      if (!tagged.insert(key).second) {
        std::ostringstream os;
        os << tag << " edge (" << e.a << "," << e.b << ") carries more than one tag";
        throw MeshError(os.str());
      }
    }
  };
  check_edges(mesh.plus_edges, "plus");
  check_edges(mesh.minus_edges, "minus");
  check_edges(mesh.exterior_edges, "exterior");

  std::set<int> slaves;
  for (const auto& p : mesh.periodic_pairs) {
    check_node(p.master, "periodic pair");
    check_node(p.slave, "periodic pair");
    const Point d = mesh.nodes[p.slave] - mesh.nodes[p.master] - p.shift;
    if (d.norm() > 1e-7 * mesh.cell_size.norm()) {
      std::ostringstream os;
      os << "periodic pair " << p.master << "->" << p.slave << " is off by " << d.norm();
      throw MeshError(os.str());
    }
    if (!slaves.insert(p.slave).second) {
      throw MeshError("node " + std::to_string(p.slave) + " is a periodic slave twice");
    }
  }
  for (int r : mesh.rigid_nodes) check_node(r, "rigid set");
}

MacroMesh generate_macro_mesh(int nx, int ny, double lx, double ly) {
  if (nx < 1 || ny < 1) throw MeshError("macro mesh needs at least one element per direction");
  if (!(lx > 0.0) || !(ly > 0.0)) throw MeshError("macro mesh extent must be positive");
  MacroMesh m;
  m.nx = nx;
  m.ny = ny;
  m.size = {lx, ly};
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) m.nodes.emplace_back(lx * i / nx, ly * j / ny);
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      m.quads.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  auto& left = m.side_nodes[static_cast<int>(Side::left)];
  auto& right = m.side_nodes[static_cast<int>(Side::right)];
  auto& bottom = m.side_nodes[static_cast<int>(Side::bottom)];
  auto& top = m.side_nodes[static_cast<int>(Side::top)];
  for (int j = 0; j <= ny; ++j) {
    left.push_back(id(0, j));
    right.push_back(id(nx, j));
  }
  for (int i = 0; i <= nx; ++i) {
    bottom.push_back(id(i, 0));
    top.push_back(id(i, ny));
  }
  for (int s = 0; s < 4; ++s) {
    const auto& nodes = m.side_nodes[s];
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      m.side_edges[s].push_back({nodes[k], nodes[k + 1]});
    }
  }
  return m;
}

}  // namespace microcontact

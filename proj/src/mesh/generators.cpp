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
#include <numbers>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/mesh/generators.hpp"
#include "microcontact/mesh/periodic.hpp"

namespace microcontact {

namespace {

constexpr double kMinLigament = 1e-3;

// Appends n uniform subdivisions of [a,b] (excluding a).
void subdivide(std::vector<double>& lines, double a, double b, int n) {
  for (int k = 1; k <= n; ++k) lines.push_back(k == n ? b : a + (b - a) * k / n);
}

int segments(double length, double h, bool even) {
  int n = std::max(1, static_cast<int>(std::ceil(length / h - 1e-9)));
  if (even && n % 2) ++n;
  return n;
}

void add_triangle(PeriodicCellMesh& m, int a, int b, int c) {
  const Point e1 = m.nodes[b] - m.nodes[a];
  const Point e2 = m.nodes[c] - m.nodes[a];
  if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(b, c);
  m.triangles.push_back({a, b, c});
}

// Splits quad (i,j) with a diagonal chosen per quadrant so that the
// triangulation is mirror symmetric about both cell midlines.
void split_quad(PeriodicCellMesh& m, int v00, int v10, int v11, int v01, const Point& center) {
  const Point mid = m.cell_center();
  if ((center.x() - mid.x()) * (center.y() - mid.y()) > 0.0) {
    add_triangle(m, v00, v10, v11);
    add_triangle(m, v00, v11, v01);
  } else {
    add_triangle(m, v00, v10, v01);
    add_triangle(m, v10, v11, v01);
  }
}

void check_edge_length(double h) {
  if (!(h > 0.0) || h > 0.5) {
    std::ostringstream os;
    os << "target_edge_length must lie in (0, 0.5], got " << h;
    throw GeometryError(os.str());
  }
}

}  // namespace

PeriodicCellMesh generate_cell_slit(const SlitCellParams& p) {
  check_edge_length(p.target_edge_length);
  if (!(p.slit_width > 0.0) || (1.0 - p.slit_width) / 2.0 < kMinLigament) {
    std::ostringstream os;
    os << "slit_width " << p.slit_width << " leaves no ligament (need 0 < slit_width <= "
       << 1.0 - 2.0 * kMinLigament << ")";
    throw GeometryError(os.str());
  }
  if (!(p.slit_gap > 0.0) || (1.0 - p.slit_gap) / 2.0 < kMinLigament) {
    std::ostringstream os;
    os << "slit_gap " << p.slit_gap << " out of range";
    throw GeometryError(os.str());
  }
  const double h = p.target_edge_length;
  const double x0 = 0.5 - p.slit_width / 2.0, x1 = 0.5 + p.slit_width / 2.0;
  const double y0 = 0.5 - p.slit_gap / 2.0, y1 = 0.5 + p.slit_gap / 2.0;

  std::vector<double> xs{0.0}, ys{0.0};
  const int nside = segments(x0, h, false);
  subdivide(xs, 0.0, x0, nside);
  const int ix0 = static_cast<int>(xs.size()) - 1;
  subdivide(xs, x0, x1, segments(p.slit_width, h, true));
  const int ix1 = static_cast<int>(xs.size()) - 1;
  subdivide(xs, x1, 1.0, nside);
  const int mside = segments(y0, h, false);
  subdivide(ys, 0.0, y0, mside);
  const int strip = static_cast<int>(ys.size()) - 1;
  ys.push_back(y1);
  subdivide(ys, y1, 1.0, mside);

  PeriodicCellMesh m;
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  auto id = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) m.nodes.emplace_back(xs[i], ys[j]);
  }
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const Point c{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      if (j == strip) {
        if (i >= ix0 && i < ix1) continue;  // slit
        // strip cells straddle the horizontal midline: split into four
        const int mid = m.num_nodes();
        m.nodes.push_back(c);
        add_triangle(m, id(i, j), id(i + 1, j), mid);
        add_triangle(m, id(i + 1, j), id(i + 1, j + 1), mid);
        add_triangle(m, id(i + 1, j + 1), id(i, j + 1), mid);
        add_triangle(m, id(i, j + 1), id(i, j), mid);
        continue;
      }
      split_quad(m, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1), c);
    }
  }
  for (int i = ix0; i < ix1; ++i) {
    m.plus_edges.push_back({id(i, strip + 1), id(i + 1, strip + 1)});
    m.minus_edges.push_back({id(i, strip), id(i + 1, strip)});
  }
  m.exterior_edges.push_back({id(ix0, strip), id(ix0, strip + 1)});
  m.exterior_edges.push_back({id(ix1, strip), id(ix1, strip + 1)});
  m.periodic_pairs = match_periodic_pairs(m.nodes, m.cell_size, 1e-9);
  validate(m);
  return m;
}

PeriodicCellMesh generate_cell_solid(double target_edge_length) {
  check_edge_length(target_edge_length);
  const int n = segments(1.0, target_edge_length, true);
  PeriodicCellMesh m;
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) m.nodes.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point c{(i + 0.5) / n, (j + 0.5) / n};
      split_quad(m, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1), c);
    }
  }
  m.periodic_pairs = match_periodic_pairs(m.nodes, m.cell_size, 1e-9);
  validate(m);
  return m;
}

PeriodicCellMesh generate_cell_ring(const RingCellParams& p) {
  check_edge_length(p.target_edge_length);
  const double R = p.hole_radius, r = p.inclusion_radius;
  if (!(r > 0.0) || !(R > r)) {
    std::ostringstream os;
    os << "ring cell needs 0 < inclusion_radius < hole_radius, got inclusion_radius " << r
       << " and hole_radius " << R;
    throw GeometryError(os.str());
  }
  if (0.5 - R < kMinLigament) {
    std::ostringstream os;
    os << "hole_radius " << R << " leaves no ligament to the cell boundary";
    throw GeometryError(os.str());
  }
  const double h = p.target_edge_length;
  // rays at uniform angles; 8 | P puts rays through the corners and midpoints
  int per_side = segments(1.0, h, true);
  const int P = 4 * per_side;
  const int radial = std::max(2, static_cast<int>(std::lround((0.5 * (0.5 + std::sqrt(0.5)) - R) / h)));
  const int gap_layers = std::max(1, static_cast<int>(std::lround((R - r) / h)));

  PeriodicCellMesh m;
  const Point c = m.cell_center();
  std::vector<Point> dir(P), outer(P);
  for (int k = 0; k < P; ++k) {
    const double th = 2.0 * std::numbers::pi * k / P;
    dir[k] = {std::cos(th), std::sin(th)};
    const double s = 0.5 / std::max(std::abs(dir[k].x()), std::abs(dir[k].y()));
    outer[k] = c + s * dir[k];
    // snap the cell boundary coordinate exactly
    if (std::abs(std::abs(dir[k].x()) * s - 0.5) < 1e-12) outer[k].x() = dir[k].x() > 0 ? 1.0 : 0.0;
    if (std::abs(std::abs(dir[k].y()) * s - 0.5) < 1e-12) outer[k].y() = dir[k].y() > 0 ? 1.0 : 0.0;
  }
  // matrix: layers 0 (hole) .. radial (cell boundary)
  std::vector<std::vector<int>> matrix(radial + 1, std::vector<int>(P));
  for (int l = 0; l <= radial; ++l) {
    for (int k = 0; k < P; ++k) {
      const Point hole = c + R * dir[k];
      matrix[l][k] = m.num_nodes();
      m.nodes.push_back(l == radial ? outer[k] : hole + (outer[k] - hole) * (static_cast<double>(l) / radial));
    }
  }
  for (int l = 0; l < radial; ++l) {
    for (int k = 0; k < P; ++k) {
      const int k1 = (k + 1) % P;
      const int a = matrix[l][k], b = matrix[l][k1], cc = matrix[l + 1][k1], d = matrix[l + 1][k];
      if (k % 2 == 0) {
        add_triangle(m, a, b, cc);
        add_triangle(m, a, cc, d);
      } else {
        add_triangle(m, a, b, d);
        add_triangle(m, b, cc, d);
      }
    }
  }
  // rigid inclusion: surface ring plus a fan to the center
  std::vector<int> inclusion(P);
  const int center = m.num_nodes();
  m.nodes.push_back(c);
  m.rigid_nodes.push_back(center);
  for (int k = 0; k < P; ++k) {
    inclusion[k] = m.num_nodes();
    m.nodes.push_back(c + r * dir[k]);
    m.rigid_nodes.push_back(inclusion[k]);
  }
  for (int k = 0; k < P; ++k) add_triangle(m, center, inclusion[k], inclusion[(k + 1) % P]);

  // spokes span the two ray intervals around each spoke ray
  const int k0 = static_cast<int>(std::lround(p.spoke_angle / (2.0 * std::numbers::pi) * P)) % P;
  const int spoke_rays[2] = {(k0 + P) % P, (k0 + P / 2 + P) % P};
  auto in_spoke = [&](int interval) {
    for (int s : spoke_rays) {
      if (interval == s || interval == (s - 1 + P) % P) return true;
    }
    return false;
  };
  for (int s : spoke_rays) {
    const int rays[3] = {(s - 1 + P) % P, s, (s + 1) % P};
    std::vector<std::array<int, 3>> layer_nodes(gap_layers + 1);
    for (int q = 0; q < 3; ++q) {
      const int k = rays[q];
      layer_nodes[0][q] = inclusion[k];
      layer_nodes[gap_layers][q] = matrix[0][k];
      for (int l = 1; l < gap_layers; ++l) {
        layer_nodes[l][q] = m.num_nodes();
        m.nodes.push_back(c + (r + (R - r) * l / gap_layers) * dir[k]);
      }
    }
    for (int l = 0; l < gap_layers; ++l) {
      for (int q = 0; q < 2; ++q) {
        const int a = layer_nodes[l][q], b = layer_nodes[l][q + 1];
        const int cc = layer_nodes[l + 1][q + 1], d = layer_nodes[l + 1][q];
        if (q == 0) {
          add_triangle(m, a, b, d);
          add_triangle(m, b, cc, d);
        } else {
          add_triangle(m, a, b, cc);
          add_triangle(m, a, cc, d);
        }
      }
      m.exterior_edges.push_back({layer_nodes[l][0], layer_nodes[l + 1][0]});
      m.exterior_edges.push_back({layer_nodes[l][2], layer_nodes[l + 1][2]});
    }
  }
  for (int k = 0; k < P; ++k) {
    if (in_spoke(k)) continue;
    const int k1 = (k + 1) % P;
    m.plus_edges.push_back({matrix[0][k], matrix[0][k1]});
    m.minus_edges.push_back({inclusion[k], inclusion[k1]});
  }
  std::sort(m.rigid_nodes.begin(), m.rigid_nodes.end());
  m.periodic_pairs = match_periodic_pairs(m.nodes, m.cell_size, 1e-9);
  validate(m);
  return m;
}

}  // namespace microcontact

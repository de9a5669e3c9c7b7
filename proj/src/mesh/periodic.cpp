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
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/mesh/periodic.hpp"

namespace microcontact {

namespace {

struct Tagged {
  double coord;
  int id;
};

[[noreturn]] void unmatched(const Point& p, int id, const char* side) {
  std::ostringstream os;
  os.precision(10);
  os << "boundary node " << id << " at (" << p.x() << ", " << p.y() << ") on the " << side
     << " face has no periodic partner";
  throw MeshError(os.str());
}

void match_faces(std::span<const Point> nodes, std::vector<Tagged> lo, std::vector<Tagged> hi,
                 const Point& shift, double tol, const char* lo_name, const char* hi_name,
                 std::vector<PeriodicPair>& out) {
  auto by_coord = [](const Tagged& a, const Tagged& b) { return a.coord < b.coord; };
  std::sort(lo.begin(), lo.end(), by_coord);
  std::sort(hi.begin(), hi.end(), by_coord);
  std::size_t j = 0;
  for (const auto& m : lo) {
    while (j < hi.size() && hi[j].coord < m.coord - tol) unmatched(nodes[hi[j].id], hi[j].id, hi_name);
    if (j == hi.size() || std::abs(hi[j].coord - m.coord) > tol) unmatched(nodes[m.id], m.id, lo_name);
    out.push_back({m.id, hi[j].id, shift});
    ++j;
  }
  if (j < hi.size()) unmatched(nodes[hi[j].id], hi[j].id, hi_name);
}

}  // namespace

std::vector<PeriodicPair> match_periodic_pairs(std::span<const Point> nodes, const Point& cell_size,
                                               double tol) {
  const double lx = cell_size.x(), ly = cell_size.y();
  auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  int corner[4] = {-1, -1, -1, -1};  // (0,0), (L,0), (0,H), (L,H)
  std::vector<Tagged> left, right, bottom, top;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const Point& p = nodes[i];
    const bool x0 = near(p.x(), 0.0), x1 = near(p.x(), lx);
    const bool y0 = near(p.y(), 0.0), y1 = near(p.y(), ly);
    if ((x0 || x1) && (y0 || y1)) {
      int c = (x1 ? 1 : 0) + (y1 ? 2 : 0);
      if (corner[c] >= 0) throw MeshError("two nodes at cell corner " + std::to_string(c));
      corner[c] = i;
    } else if (x0) {
      left.push_back({p.y(), i});
    } else if (x1) {
      right.push_back({p.y(), i});
    } else if (y0) {
      bottom.push_back({p.x(), i});
    } else if (y1) {
      top.push_back({p.x(), i});
    }
  }
  for (int c = 0; c < 4; ++c) {
    if (corner[c] < 0) throw MeshError("cell corner " + std::to_string(c) + " has no node");
  }

  std::vector<PeriodicPair> pairs;
  match_faces(nodes, std::move(left), std::move(right), {lx, 0.0}, tol, "left", "right", pairs);
  match_faces(nodes, std::move(bottom), std::move(top), {0.0, ly}, tol, "bottom", "top", pairs);
  pairs.push_back({corner[0], corner[1], {lx, 0.0}});
  pairs.push_back({corner[0], corner[2], {0.0, ly}});
  pairs.push_back({corner[0], corner[3], {lx, ly}});
  return pairs;
}

}  // namespace microcontact

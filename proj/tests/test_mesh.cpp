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
#include <set>
#include <sstream>

#include "doctest.h"
#include "microcontact/errors.hpp"
#include "microcontact/mesh/generators.hpp"
#include "microcontact/mesh/mesh_io.hpp"
#include "microcontact/mesh/pairing.hpp"
#include "microcontact/mesh/periodic.hpp"

using namespace microcontact;

namespace {

// Independent count of boundary nodes that must be slaves.
int expected_pair_count(const PeriodicCellMesh& m) {
  int left = 0, bottom = 0;
  for (const auto& p : m.nodes) {
    const bool x0 = std::abs(p.x()) < 1e-9, y0 = std::abs(p.y()) < 1e-9;
    const bool xe = x0 || std::abs(p.x() - 1.0) < 1e-9, ye = y0 || std::abs(p.y() - 1.0) < 1e-9;
    if (xe && ye) continue;
    if (x0) ++left;
    if (y0) ++bottom;
  }
  return left + bottom + 3;
}

PeriodicCellMesh mirror_x(const PeriodicCellMesh& m) {
  PeriodicCellMesh r = m;
  for (auto& p : r.nodes) p.x() = 1.0 - p.x();
  for (auto& t : r.triangles) std::swap(t[1], t[2]);
  r.periodic_pairs = match_periodic_pairs(r.nodes, r.cell_size);
  return r;
}

}  // namespace

TEST_CASE("slit cell geometry") {
  SlitCellParams p;
  const auto m = generate_cell_slit(p);
  CHECK_NOTHROW(validate(m));
  CHECK(m.solid_area() == doctest::Approx(1.0 - p.slit_width * p.slit_gap).epsilon(1e-12));
  CHECK(static_cast<int>(m.periodic_pairs.size()) == expected_pair_count(m));
  CHECK(m.plus_edges.size() == m.minus_edges.size());
  CHECK(m.exterior_edges.size() == 2);
  CHECK(m.rigid_nodes.empty());
  for (int n : m.plus_nodes()) CHECK(m.nodes[n].y() == doctest::Approx(0.5 + p.slit_gap / 2));
  for (int n : m.minus_nodes()) CHECK(m.nodes[n].y() == doctest::Approx(0.5 - p.slit_gap / 2));

  // the triangulation is mirror symmetric about both midlines
  auto key = [](const Point& a) { return std::make_pair(std::lround(a.x() * 1e9), std::lround(a.y() * 1e9)); };
  std::set<std::array<std::pair<long, long>, 3>> tris, mirrored;
  for (const auto& t : m.triangles) {
    std::array<std::pair<long, long>, 3> a, b;
    for (int k = 0; k < 3; ++k) {
      a[k] = key(m.nodes[t[k]]);
      b[k] = key({1.0 - m.nodes[t[k]].x(), m.nodes[t[k]].y()});
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    tris.insert(a);
    mirrored.insert(b);
  }
  CHECK(tris == mirrored);
}

TEST_CASE("slit cell rejects a slit with no ligament") {
  SlitCellParams p;
  p.slit_width = 0.99999;
  try {
    generate_cell_slit(p);
    FAIL("expected GeometryError");
  } catch (const GeometryError& e) {
    CHECK(std::string(e.what()).find("slit_width") != std::string::npos);
  }
}

TEST_CASE("ring cell geometry") {
  RingCellParams p;
  const auto m = generate_cell_ring(p);
  CHECK_NOTHROW(validate(m));
  CHECK(static_cast<int>(m.periodic_pairs.size()) == expected_pair_count(m));
  // polygonal areas: the annulus between the hole and the inclusion is void except for the spokes
  const double pi = std::numbers::pi;
  const double annulus = pi * (p.hole_radius * p.hole_radius - p.inclusion_radius * p.inclusion_radius);
  CHECK(m.solid_area() < 1.0 - 0.8 * annulus);
  CHECK(m.solid_area() > 1.0 - 1.02 * annulus);
  CHECK(!m.rigid_nodes.empty());
  for (int n : m.minus_nodes()) {
    CHECK(std::binary_search(m.rigid_nodes.begin(), m.rigid_nodes.end(), n));
    CHECK((m.nodes[n] - m.cell_center()).norm() == doctest::Approx(p.inclusion_radius));
  }
  for (int n : m.plus_nodes()) CHECK((m.nodes[n] - m.cell_center()).norm() == doctest::Approx(p.hole_radius));
}

TEST_CASE("ring cell needs the hole to be larger than the inclusion") {
  RingCellParams p;
  p.inclusion_radius = p.hole_radius;
  CHECK_THROWS_AS(generate_cell_ring(p), GeometryError);
}

TEST_CASE("periodic matching reports unmatched nodes") {
  auto m = generate_cell_solid(0.25);
  CHECK_NOTHROW(match_periodic_pairs(m.nodes, m.cell_size));
  for (auto& p : m.nodes) {
    if (std::abs(p.x() - 1.0) < 1e-12 && std::abs(p.y() - 0.5) < 1e-12) p.y() += 1e-6;
  }
  try {
    match_periodic_pairs(m.nodes, m.cell_size, 1e-9);
    FAIL("expected MeshError");
  } catch (const MeshError& e) {
    const std::string what = e.what();
    CHECK(what.find("0.5") != std::string::npos);
  }
}

TEST_CASE("periodic pairs shift masters onto slaves") {
  const auto m = generate_cell_slit({});
  std::set<int> slaves;
  for (const auto& p : m.periodic_pairs) {
    CHECK((m.nodes[p.master] + p.shift - m.nodes[p.slave]).norm() < 1e-12);
    slaves.insert(p.slave);
  }
  CHECK(slaves.size() == m.periodic_pairs.size());
}

TEST_CASE("slit pairing") {
  SlitCellParams p;
  const auto m = generate_cell_slit(p);
  const auto pr = build_contact_pairing(m);
  CHECK(pr.size() == static_cast<int>(m.plus_nodes().size()));
  for (int i = 0; i < pr.size(); ++i) {
    const auto& r = pr.records[i];
    CHECK(r.plus.is_node());
    CHECK(r.minus.is_node());
    CHECK(r.normal.x() == doctest::Approx(0.0));
    CHECK(r.normal.y() == doctest::Approx(1.0));
    // independent gap: vertical distance of the paired nodes
    CHECK(r.ref_gap == doctest::Approx(m.nodes[r.plus.node_a].y() - m.nodes[r.minus.node_a].y()));
    CHECK(r.ref_gap == doctest::Approx(p.slit_gap));
    CHECK(m.nodes[r.plus.node_a].x() == doctest::Approx(m.nodes[r.minus.node_a].x()));
    if (i > 0) CHECK(r.t > pr.records[i - 1].t);
    CHECK(r.prev == (i == 0 ? -1 : i - 1));
    CHECK(r.next == (i + 1 == pr.size() ? -1 : i + 1));
  }
}

TEST_CASE("ring pairing") {
  RingCellParams p;
  const auto m = generate_cell_ring(p);
  const auto pr = build_contact_pairing(m);
  CHECK(pr.size() == static_cast<int>(m.plus_nodes().size()));
  int ends = 0;
  for (const auto& r : pr.records) {
    const Point radial = (m.nodes[r.plus.node_a] - m.cell_center()).normalized();
    CHECK(r.plus.is_node());
    CHECK(r.minus.is_node());
    if (r.prev < 0 || r.next < 0) {
      // arc ends see a single face edge, so their normal is tilted by half an edge angle
      ++ends;
      CHECK(r.normal.dot(radial) > 0.99);
      CHECK(r.ref_gap == doctest::Approx(p.hole_radius - p.inclusion_radius).epsilon(1e-3));
      continue;
    }
    CHECK(r.normal.dot(radial) == doctest::Approx(1.0));
    CHECK(r.ref_gap == doctest::Approx(p.hole_radius - p.inclusion_radius));
  }
  CHECK(ends == 4);  // two open arcs between the spokes
}

TEST_CASE("pairing is equivariant under mirroring") {
  const auto m = generate_cell_slit({0.5, 0.03, 0.05});
  const auto r = mirror_x(m);
  const auto a = build_contact_pairing(m), b = build_contact_pairing(r);
  REQUIRE(a.size() == b.size());
  for (const auto& ra : a.records) {
    const Point pa = ra.plus.position(m);
    bool found = false;
    for (const auto& rb : b.records) {
      const Point pb = rb.plus.position(r);
      if (std::abs(pb.x() - (1.0 - pa.x())) < 1e-12 && std::abs(pb.y() - pa.y()) < 1e-12) {
        found = true;
        CHECK(rb.ref_gap == doctest::Approx(ra.ref_gap).epsilon(1e-14));
        CHECK(rb.normal.x() == doctest::Approx(-ra.normal.x()));
        CHECK(rb.normal.y() == doctest::Approx(ra.normal.y()));
      }
    }
    CHECK(found);
  }
}

TEST_CASE("pairing fails when a face has no counterpart") {
  auto m = generate_cell_slit({});
  m.minus_edges.resize(m.minus_edges.size() / 2);
  m.exterior_edges.clear();
  try {
    build_contact_pairing(m);
    FAIL("expected PairingError");
  } catch (const PairingError& e) {
    CHECK(e.node() >= 0);
    CHECK(e.node() < m.num_nodes());
  }
}

TEST_CASE("cell mesh file round trip") {
  const auto m = generate_cell_ring({});
  std::stringstream ss;
  write_cell_mesh(m, ss);
  const auto r = read_cell_mesh(ss);
  REQUIRE(r.num_nodes() == m.num_nodes());
  for (int i = 0; i < m.num_nodes(); ++i) CHECK(r.nodes[i] == m.nodes[i]);
  CHECK(r.triangles == m.triangles);
  CHECK(r.rigid_nodes == m.rigid_nodes);
  CHECK(r.plus_edges.size() == m.plus_edges.size());
  CHECK(r.periodic_pairs.size() == m.periodic_pairs.size());
  const auto pa = build_contact_pairing(m), pb = build_contact_pairing(r);
  REQUIRE(pa.size() == pb.size());
  for (int i = 0; i < pa.size(); ++i) CHECK(pa.records[i].ref_gap == pb.records[i].ref_gap);
}

TEST_CASE("malformed mesh files name the line") {
  std::stringstream ss("cellmesh v1\ncell_size 1 1\nnodes 2\n0 0 0\n1 zero 1\n");
  try {
    read_cell_mesh(ss);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("macro mesh") {
  const auto m = generate_macro_mesh(4, 3, 2.0, 1.0);
  CHECK(m.num_nodes() == 20);
  CHECK(m.num_elements() == 12);
  CHECK(m.side_nodes[static_cast<int>(Side::left)].size() == 4);
  CHECK(m.side_nodes[static_cast<int>(Side::top)].size() == 5);
  CHECK(m.side_edges[static_cast<int>(Side::bottom)].size() == 4);
  std::stringstream ss;
  write_macro_mesh(m, ss);
  const auto r = read_macro_mesh(ss);
  CHECK(r.quads == m.quads);
}

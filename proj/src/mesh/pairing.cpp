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
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/mesh/pairing.hpp"

namespace microcontact {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Polyline through the edges of one face tag.
struct Chain {
  std::vector<int> nodes;
  std::vector<double> arc;  // cumulative length, arc.back() includes the closing edge
  bool closed = false;
};

struct Face {
  std::vector<Edge> edges;
  std::vector<Point> edge_normal;    // outward from the solid
  std::map<int, Point> node_normal;  // averaged
  std::vector<Chain> chains;
  std::map<int, std::pair<int, int>> where;  // node -> (chain, index)
};

Face build_face(const PeriodicCellMesh& mesh, const std::vector<Edge>& edges, const char* tag) {
  std::map<std::pair<int, int>, int> third;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      third[{std::min(a, b), std::max(a, b)}] = t[(k + 2) % 3];
    }
  }
  Face f;
  f.edges = edges;
  std::map<int, std::vector<int>> adj;
  for (const auto& e : edges) {
    auto it = third.find({std::min(e.a, e.b), std::max(e.a, e.b)});
    if (it == third.end()) {
      throw PairingError(std::string(tag) + " edge has no owning triangle", e.a);
    }
    const Point d = mesh.nodes[e.b] - mesh.nodes[e.a];
    Point n{d.y(), -d.x()};
    n.normalize();
    if (n.dot(mesh.nodes[it->second] - mesh.nodes[e.a]) > 0.0) n = -n;
    f.edge_normal.push_back(n);
    for (int v : {e.a, e.b}) f.node_normal.try_emplace(v, Point::Zero()).first->second += n;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [node, n] : f.node_normal) {
    if (n.norm() < 1e-12) throw PairingError(std::string(tag) + " face folds back on itself", node);
    n.normalize();
  }
  for (const auto& [node, nb] : adj) {
    if (nb.size() > 2) throw PairingError(std::string(tag) + " face branches at a node", node);
  }

  // chains: open ones from their lowest-numbered end, then closed loops
  std::map<int, bool> used;
  auto walk = [&](int start, bool closed) {
    Chain c;
    c.closed = closed;
    int prev = -1, cur = start;
    while (true) {
      c.nodes.push_back(cur);
      used[cur] = true;
      int next = -1;
      for (int nb : adj[cur]) {
        if (nb != prev && !used[nb]) {
          next = nb;
          break;
        }
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    c.arc.push_back(0.0);
    for (std::size_t i = 1; i < c.nodes.size(); ++i) {
      c.arc.push_back(c.arc.back() + (mesh.nodes[c.nodes[i]] - mesh.nodes[c.nodes[i - 1]]).norm());
    }
    if (closed) c.arc.push_back(c.arc.back() + (mesh.nodes[c.nodes.front()] - mesh.nodes[c.nodes.back()]).norm());
    return c;
  };
  for (const auto& [node, nb] : adj) {
    if (nb.size() == 1 && !used[node]) f.chains.push_back(walk(node, false));
  }
  for (const auto& [node, nb] : adj) {
    if (!used[node]) f.chains.push_back(walk(node, true));
  }
  for (int ci = 0; ci < static_cast<int>(f.chains.size()); ++ci) {
    for (int i = 0; i < static_cast<int>(f.chains[ci].nodes.size()); ++i) {
      f.where[f.chains[ci].nodes[i]] = {ci, i};
    }
  }
  return f;
}

Point side_normal(const Face& f, const SidePoint& s) {
  Point n = (1.0 - s.weight) * f.node_normal.at(s.node_a) + s.weight * f.node_normal.at(s.node_b);
  return n.normalized();
}

// Nearest hit of the ray origin + xi*dir (xi >= 0) on a face that faces the ray.
std::optional<SidePoint> cast(const PeriodicCellMesh& mesh, const Face& target, const Point& origin,
                              const Point& dir, double tol) {
  const double scale = mesh.cell_size.norm();
  double best = std::numeric_limits<double>::infinity();
  std::optional<SidePoint> hit;
  for (std::size_t k = 0; k < target.edges.size(); ++k) {
    const auto& e = target.edges[k];
    if (target.edge_normal[k].dot(dir) >= 0.0) continue;
    const Point q0 = mesh.nodes[e.a];
    const Point seg = mesh.nodes[e.b] - q0;
    const double det = cross(dir, seg);
    if (std::abs(det) < 1e-14 * seg.norm()) continue;
    const Point rhs = q0 - origin;
    const double xi = cross(rhs, seg) / det;
    const double s = cross(rhs, dir) / det;
    const double len = seg.norm();
    if (s < -tol / len || s > 1.0 + tol / len || xi < -tol * scale) continue;
    if (xi < best - tol * scale) {
      best = xi;
      SidePoint sp{e.a, e.b, std::clamp(s, 0.0, 1.0)};
      if (sp.weight * len <= tol * scale) sp = {e.a, e.a, 0.0};
      else if ((1.0 - sp.weight) * len <= tol * scale) sp = {e.b, e.b, 0.0};
      hit = sp;
    }
  }
  return hit;
}

// Nearest node of the face. Used instead of the normal ray at open chain
// ends, where the averaged normal only sees one edge.
std::optional<SidePoint> nearest_node(const PeriodicCellMesh& mesh, const Face& target, const Point& origin) {
  double best = std::numeric_limits<double>::infinity();
  std::optional<SidePoint> out;
  for (const auto& [node, n] : target.node_normal) {
    const double d = (mesh.nodes[node] - origin).norm();
    if (d < best) {
      best = d;
      out = SidePoint{node, node, 0.0};
    }
  }
  return out;
}

bool is_chain_end(const Face& f, int node) {
  auto [c, i] = f.where.at(node);
  const Chain& ch = f.chains[c];
  return !ch.closed && (i == 0 || i + 1 == static_cast<int>(ch.nodes.size()));
}

SidePoint canonical(SidePoint s) {
  if (s.is_node()) return s;
  if (s.node_a > s.node_b) {
    std::swap(s.node_a, s.node_b);
    s.weight = 1.0 - s.weight;
  }
  return s;
}

double chain_position(const Face& f, const SidePoint& s, int& chain) {
  auto [ca, ia] = f.where.at(s.node_a);
  chain = ca;
  const Chain& c = f.chains[ca];
  if (s.is_node()) return c.arc[ia];
  auto [cb, ib] = f.where.at(s.node_b);
  double pa = c.arc[ia], pb = c.arc[ib];
  if (c.closed && std::abs(ia - ib) != 1) {
    // closing edge: the node at index 0 sits at the end of the loop
    if (ia == 0) pa = c.arc.back();
    if (ib == 0) pb = c.arc.back();
  }
  return (1.0 - s.weight) * pa + s.weight * pb;
}

}  // namespace

ContactPairing build_contact_pairing(const PeriodicCellMesh& mesh, double tol) {
  if (mesh.plus_edges.empty() && mesh.minus_edges.empty()) return {};
  if (mesh.plus_edges.empty() || mesh.minus_edges.empty()) {
    const auto& e = mesh.plus_edges.empty() ? mesh.minus_edges : mesh.plus_edges;
    throw PairingError("contact face has no opposite face", e.front().a);
  }
  const Face plus = build_face(mesh, mesh.plus_edges, "plus");
  const Face minus = build_face(mesh, mesh.minus_edges, "minus");

  struct Raw {
    SidePoint plus, minus;
  };
  std::vector<Raw> raw;
  std::map<int, SidePoint> plus_hits, minus_hits;
  for (const auto& [node, n] : plus.node_normal) {
    auto hit = is_chain_end(plus, node) ? nearest_node(mesh, minus, mesh.nodes[node])
                                        : cast(mesh, minus, mesh.nodes[node], n, tol);
    if (!hit) throw PairingError("normal ray from plus node misses the minus face", node);
    plus_hits[node] = *hit;
  }
  for (const auto& [node, n] : minus.node_normal) {
    auto hit = is_chain_end(minus, node) ? nearest_node(mesh, plus, mesh.nodes[node])
                                         : cast(mesh, plus, mesh.nodes[node], n, tol);
    if (!hit) throw PairingError("normal ray from minus node misses the plus face", node);
    minus_hits[node] = *hit;
  }
  for (const auto& [node, hit] : plus_hits) raw.push_back({{node, node, 0.0}, canonical(hit)});
  for (const auto& [node, hit] : minus_hits) {
    // reciprocal node-to-node hit: already recorded from the plus side
    if (hit.is_node()) {
      auto back = plus_hits.find(hit.node_a);
      if (back != plus_hits.end() && back->second.is_node() && back->second.node_a == node) continue;
    }
    raw.push_back({canonical(hit), {node, node, 0.0}});
  }

  // chains follow each other with a spacer so that t stays strictly increasing
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& e : plus.edges) shortest = std::min(shortest, (mesh.nodes[e.b] - mesh.nodes[e.a]).norm());
  double total = 0.0;
  std::vector<double> offset;
  for (const auto& c : plus.chains) {
    if (!offset.empty()) total += shortest;
    offset.push_back(total);
    total += c.arc.back();
  }

  struct Keyed {
    ContactRecord rec;
    int chain;
  };
  std::vector<Keyed> keyed;
  for (const auto& r : raw) {
    ContactRecord rec;
    rec.plus = r.plus;
    rec.minus = r.minus;
    const Point np = side_normal(plus, r.plus), nm = side_normal(minus, r.minus);
    Point n = nm - np;
    if (n.norm() < 1e-12) {
      throw PairingError("opposite faces have parallel outward normals", r.plus.node_a);
    }
    rec.normal = n.normalized();
    rec.ref_gap = rec.normal.dot(r.plus.position(mesh) - r.minus.position(mesh));
    if (rec.ref_gap < -tol * mesh.cell_size.norm()) {
      std::ostringstream os;
      os << "faces interpenetrate in the reference configuration (gap " << rec.ref_gap << ")";
      throw PairingError(os.str(), r.plus.is_node() ? r.plus.node_a : r.minus.node_a);
    }
    rec.ref_gap = std::max(rec.ref_gap, 0.0);
    int chain = 0;
    const double pos = chain_position(plus, r.plus, chain);
    rec.t = total > 0.0 ? (offset[chain] + pos) / total : 0.0;
    keyed.push_back({rec, chain});
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const Keyed& a, const Keyed& b) { return a.rec.t < b.rec.t; });

  ContactPairing out;
  for (const auto& k : keyed) out.records.push_back(k.rec);
  const int n = out.size();
  for (int i = 0; i + 1 < n; ++i) {
    if (keyed[i].chain == keyed[i + 1].chain) {
      out.records[i].next = i + 1;
      out.records[i + 1].prev = i;
    }
  }
  // close loops
  for (int ci = 0; ci < static_cast<int>(plus.chains.size()); ++ci) {
    if (!plus.chains[ci].closed) continue;
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i) {
      if (keyed[i].chain != ci) continue;
      if (first < 0) first = i;
      last = i;
    }
    if (first >= 0 && last != first) {
      out.records[last].next = first;
      out.records[first].prev = last;
    }
  }
  validate(out, mesh, tol);
  return out;
}

void validate(const ContactPairing& pairing, const PeriodicCellMesh& mesh, double tol) {
  const int n = pairing.size();
  for (int i = 0; i < n; ++i) {
    const auto& r = pairing.records[i];
    const int node = r.plus.node_a;
    if (std::abs(r.normal.norm() - 1.0) > 1e-12) throw PairingError("record normal is not unit", node);
    if (r.ref_gap < 0.0) throw PairingError("negative reference gap", node);
    const double g = r.normal.dot(r.plus.position(mesh) - r.minus.position(mesh));
    if (std::abs(g - r.ref_gap) > tol * mesh.cell_size.norm()) {
      throw PairingError("reference gap disagrees with geometry", node);
    }
    if (r.t < 0.0 || r.t > 1.0 || (i > 0 && !(r.t > pairing.records[i - 1].t))) {
      throw PairingError("record parameters are not strictly increasing", node);
    }
    if ((r.prev >= 0 && pairing.records[r.prev].next != i) ||
        (r.next >= 0 && pairing.records[r.next].prev != i)) {
      throw PairingError("neighbor links are not symmetric", node);
    }
  }
}

}  // namespace microcontact

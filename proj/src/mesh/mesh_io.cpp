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

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/mesh/mesh_io.hpp"

namespace microcontact {

namespace {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next non-empty line that is not a comment.
  std::istringstream line() {
    std::string s;
    while (std::getline(in_, s)) {
      ++lineno_;
      auto pos = s.find('#');
      if (pos != std::string::npos) s.erase(pos);
      if (s.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(s);
    }
    fail("unexpected end of file");
  }

  int section(const std::string& name) {
    auto ls = line();
    std::string word;
    int count = -1;
    ls >> word >> count;
    if (word != name || !ls || count < 0) fail("expected '" + name + " <count>'");
    return count;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("mesh file line " + std::to_string(lineno_) + ": " + what);
  }

  template <typename... T>
  void values(std::istringstream& ls, T&... v) {
    ((ls >> v), ...);
    if (!ls) fail("malformed record");
  }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

void write_edges(std::ostream& out, const char* name, const std::vector<Edge>& edges) {
  out << name << ' ' << edges.size() << '\n';
  for (const auto& e : edges) out << e.a << ' ' << e.b << '\n';
}

std::vector<Edge> read_edges(Reader& r, const char* name) {
  std::vector<Edge> edges(r.section(name));
  for (auto& e : edges) {
    auto ls = r.line();
    r.values(ls, e.a, e.b);
  }
  return edges;
}

}  // namespace

void write_cell_mesh(const PeriodicCellMesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "cellmesh v1\n";
  out << "cell_size " << mesh.cell_size.x() << ' ' << mesh.cell_size.y() << '\n';
  out << "nodes " << mesh.nodes.size() << '\n';
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    out << i << ' ' << mesh.nodes[i].x() << ' ' << mesh.nodes[i].y() << '\n';
  }
  out << "tris " << mesh.triangles.size() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    out << t << ' ' << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  write_edges(out, "plus", mesh.plus_edges);
  write_edges(out, "minus", mesh.minus_edges);
  write_edges(out, "exterior", mesh.exterior_edges);
  out << "rigid " << mesh.rigid_nodes.size() << '\n';
  for (int r : mesh.rigid_nodes) out << r << '\n';
  out << "pairs " << mesh.periodic_pairs.size() << '\n';
  for (const auto& p : mesh.periodic_pairs) {
    out << p.master << ' ' << p.slave << ' ' << p.shift.x() << ' ' << p.shift.y() << '\n';
  }
}

PeriodicCellMesh read_cell_mesh(std::istream& in) {
  Reader r(in);
  {
    auto ls = r.line();
    std::string magic, version;
    ls >> magic >> version;
    if (magic != "cellmesh" || version != "v1") r.fail("not a 'cellmesh v1' file");
  }
  PeriodicCellMesh m;
  {
    auto ls = r.line();
    std::string word;
    ls >> word;
    if (word != "cell_size") r.fail("expected 'cell_size'");
    r.values(ls, m.cell_size.x(), m.cell_size.y());
  }
  m.nodes.resize(r.section("nodes"));
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    auto ls = r.line();
    std::size_t id = 0;
    r.values(ls, id, m.nodes[i].x(), m.nodes[i].y());
    if (id != i) r.fail("node ids must be consecutive from 0");
  }
  m.triangles.resize(r.section("tris"));
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    auto ls = r.line();
    std::size_t id = 0;
    r.values(ls, id, m.triangles[t][0], m.triangles[t][1], m.triangles[t][2]);
    if (id != t) r.fail("triangle ids must be consecutive from 0");
  }
  m.plus_edges = read_edges(r, "plus");
  m.minus_edges = read_edges(r, "minus");
  m.exterior_edges = read_edges(r, "exterior");
  m.rigid_nodes.resize(r.section("rigid"));
  for (auto& id : m.rigid_nodes) {
    auto ls = r.line();
    r.values(ls, id);
  }
  m.periodic_pairs.resize(r.section("pairs"));
  for (auto& p : m.periodic_pairs) {
    auto ls = r.line();
    r.values(ls, p.master, p.slave, p.shift.x(), p.shift.y());
  }
  validate(m);
  return m;
}

void save_cell_mesh(const PeriodicCellMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_cell_mesh(mesh, out);
  if (!out) throw IoError("write failed for " + path.string());
}

PeriodicCellMesh load_cell_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_cell_mesh(in);
}

void write_macro_mesh(const MacroMesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "macromesh v1\n";
  out << "grid " << mesh.nx << ' ' << mesh.ny << ' ' << mesh.size.x() << ' ' << mesh.size.y() << '\n';
  out << "nodes " << mesh.nodes.size() << '\n';
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    out << i << ' ' << mesh.nodes[i].x() << ' ' << mesh.nodes[i].y() << '\n';
  }
  out << "quads " << mesh.quads.size() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& q = mesh.quads[e];
    out << e << ' ' << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  }
}

MacroMesh read_macro_mesh(std::istream& in) {
  Reader r(in);
  {
    auto ls = r.line();
    std::string magic, version;
    ls >> magic >> version;
    if (magic != "macromesh" || version != "v1") r.fail("not a 'macromesh v1' file");
  }
  int nx = 0, ny = 0;
  double lx = 0, ly = 0;
  {
    auto ls = r.line();
    std::string word;
    ls >> word;
    if (word != "grid") r.fail("expected 'grid'");
    r.values(ls, nx, ny, lx, ly);
  }
  // structured meshes only: regenerate and check the stored data agrees
  MacroMesh m = generate_macro_mesh(nx, ny, lx, ly);
  if (r.section("nodes") != m.num_nodes()) r.fail("node count does not match grid");
  for (int i = 0; i < m.num_nodes(); ++i) {
    auto ls = r.line();
    int id = 0;
    Point p;
    r.values(ls, id, p.x(), p.y());
    if (id != i || (p - m.nodes[i]).norm() > 1e-12) r.fail("node does not match grid");
  }
  if (r.section("quads") != m.num_elements()) r.fail("quad count does not match grid");
  for (int e = 0; e < m.num_elements(); ++e) {
    auto ls = r.line();
    int id = 0;
    std::array<int, 4> q{};
    r.values(ls, id, q[0], q[1], q[2], q[3]);
    if (id != e || q != m.quads[e]) r.fail("quad does not match grid");
  }
  return m;
}

}  // namespace microcontact

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
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "microcontact/errors.hpp"
#include "microcontact/fem/elasticity.hpp"
#include "microcontact/io/config.hpp"
#include "microcontact/io/export.hpp"
#include "microcontact/mesh/generators.hpp"
#include "microcontact/mesh/mesh_io.hpp"

using namespace microcontact;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "microcontact_test_io";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Minimal legacy VTK reader: section sizes and named data arrays.
struct VtkFile {
  int points = 0, cells = 0, cell_types = 0;
  std::vector<double> coords;
  std::vector<int> types;
  std::map<std::string, std::vector<double>> arrays;
};

VtkFile read_vtk(std::istream& in) {
  VtkFile f;
  std::string line;
  for (int i = 0; i < 4; ++i) std::getline(in, line);
  REQUIRE(line == "DATASET UNSTRUCTURED_GRID");
  std::string word;
  int data_count = 0;
  while (in >> word) {
    if (word == "POINTS") {
      in >> f.points >> word;
      f.coords.resize(3 * f.points);
      for (auto& x : f.coords) in >> x;
    } else if (word == "CELLS") {
      int total = 0;
      in >> f.cells >> total;
      for (int i = 0; i < total; ++i) in >> word;
    } else if (word == "CELL_TYPES") {
      in >> f.cell_types;
      f.types.resize(f.cell_types);
      for (auto& t : f.types) in >> t;
    } else if (word == "CELL_DATA" || word == "POINT_DATA") {
      in >> data_count;
    } else if (word == "SCALARS") {
      std::string name, type, table;
      int comps = 0;
      in >> name >> type >> comps >> table >> word;
      auto& v = f.arrays[name];
      v.resize(data_count);
      for (auto& x : v) in >> x;
    } else if (word == "VECTORS") {
      std::string name;
      in >> name >> word;
      auto& v = f.arrays[name];
      v.resize(3 * data_count);
      for (auto& x : v) in >> x;
    } else {
      FAIL("unexpected token " << word);
    }
  }
  return f;
}

}  // namespace

TEST_CASE("presets") {
  const auto u = preset("uniaxial");
  CHECK(u.young == 2.3);
  CHECK(u.poisson == 0.3);
  CHECK(u.macro.nx * u.macro.ny == 2);
  REQUIRE(u.macro.boundary.tractions.size() == 1);
  CHECK(u.macro.boundary.tractions[0].side == Side::top);
  CHECK(u.macro.boundary.tractions[0].value == Point(0.0, -0.1));
  CHECK(u.cell.kind == CellKind::slit);

  const auto b = preset("bending");
  CHECK(b.macro.nx == 4);
  CHECK(b.macro.ny == 4);
  CHECK(b.macro.boundary.tractions[0].value == Point(0.01, 0.0));
  CHECK(b.macro.boundary.fixed.size() == 2);
  for (const auto& f : b.macro.boundary.fixed) CHECK(f.side == Side::bottom);
  CHECK(b.cell.kind == CellKind::ring);

  CHECK_THROWS_AS(preset("shear"), ConfigError);
  for (const auto& name : preset_names()) CHECK_NOTHROW(validate(preset(name)));
}

TEST_CASE("parsing fills defaults and warns on unknown keys") {
  std::vector<std::string> warnings;
  const auto c = parse_config(R"({"preset": "uniaxial", "solver": {"method": "mc-uzawa", "colour": 3},
                                  "extra": true})",
                              &warnings);
  CHECK(c.solver.method == MacroMethod::mc_uzawa);
  CHECK(c.solver.tol_outer == SolverConfig{}.tol_outer);
  CHECK(c.solver.max_outer == 40);
  CHECK(c.macro == preset("uniaxial").macro);
  std::sort(warnings.begin(), warnings.end());
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0] == "unknown key config.extra");
  CHECK(warnings[1] == "unknown key solver.colour");

  const auto g = parse_config(R"({"solver": {"gamma": "full"}, "cell": {"kind": "ring", "h": 0.1}})");
  CHECK(g.solver.gamma == kFullGamma);
  CHECK(g.cell.ring.target_edge_length == 0.1);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(parse_config(R"({"material": {"nu": 0.7}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"material": {"E": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"tol_outer": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"method": "gauss"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"gamma": -2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"macro": {"tractions": [{"side": "top", "value": [1]}]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"macro": {"nx": "two"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cell": {"kind": "file"}})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  try {
    parse_config("{\n  \"material\": {\n    \"E\": 2.3,,\n  }\n}");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
}

TEST_CASE("configuration round trip") {
  auto custom = preset("bending");
  custom.name = "custom-run";
  custom.young = 1.7;
  custom.poisson = -0.2;
  custom.cell.kind = CellKind::slit;
  custom.cell.slit.slit_width = 0.55;
  custom.macro.boundary.tied = {{Side::right, 1}};
  custom.macro.boundary.fixed.push_back({Side::left, 0, 0.125});
  custom.macro.load_steps = 3;
  custom.solver.method = MacroMethod::mc_newton;
  custom.solver.gamma = kFullGamma;
  custom.solver.beta0 = 0.3;
  custom.solver.threads = 2;
  custom.output.vtk = false;
  custom.output.deform_scale = 12.5;
  custom.output.micro_points = {1, 5, 7};
  for (const auto& cfg : {preset("uniaxial"), preset("bending"), custom, ProblemConfig{}}) {
    const auto path = scratch("round_trip.json");
    save_config(cfg, path);
    std::vector<std::string> warnings;
    CHECK(load_config(path, &warnings) == cfg);
    CHECK(warnings.empty());
  }
}

TEST_CASE("output directory honours the environment") {
  ProblemConfig c;
  c.output.directory = "results";
  unsetenv("MICROCONTACT_OUT");
  CHECK(output_directory(c) == fs::path("results"));
  setenv("MICROCONTACT_OUT", "/tmp/elsewhere", 1);
  CHECK(output_directory(c) == fs::path("/tmp/elsewhere"));
  unsetenv("MICROCONTACT_OUT");
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, -0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5e-17}) {
    CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("zero macro state exports zero fields") {
  const MacroModel model(generate_macro_mesh(3, 2), preset("uniaxial").macro.boundary);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * model.mesh().num_nodes());
  const std::vector<SymTensor2> sigma(model.num_points());
  const std::vector<int> active(model.num_points(), 0);
  std::stringstream ss;
  write_macro_vtk(ss, model, u, sigma, active);
  const auto f = read_vtk(ss);
  CHECK(f.points == 12);
  CHECK(f.cells == 6);
  for (int t : f.types) CHECK(t == 9);
  REQUIRE(f.arrays.count("displacement"));
  for (double x : f.arrays.at("displacement")) CHECK(x == 0.0);
  for (const char* name : {"sigma_xx", "sigma_yy", "sigma_xy", "n_contact"}) {
    REQUIRE(f.arrays.count(name));
    CHECK(f.arrays.at(name).size() == 6);
    for (double x : f.arrays.at(name)) CHECK(x == 0.0);
  }
  const std::vector<int> wrong(3, 0);
  CHECK_THROWS_AS(write_macro_vtk(ss, model, u, sigma, wrong), ContractError);
}

TEST_CASE("macro export after a solve") {
  const auto cfg = preset("uniaxial");
  const MacroModel model = build_macro(cfg.macro);
  const CellContext cell(build_cell(cfg.cell), plane_strain_tensor(cfg.young, cfg.poisson));
  const auto result = two_scale_solve(model, cell, solver_options(cfg));
  const auto path = scratch("out") / "macro.vtk";
  export_macro_vtk(path, model, result.state);
  std::ifstream in(path);
  const auto f = read_vtk(in);
  double contact = 0.0;
  for (const auto& [name, values] : f.arrays) {
    for (double x : values) CHECK(std::isfinite(x));
  }
  for (double x : f.arrays.at("n_contact")) contact += x;
  CHECK(contact > 0.0);
  for (double s : f.arrays.at("sigma_yy")) CHECK(s == doctest::Approx(-0.1).epsilon(1e-8));
  const auto& u = f.arrays.at("displacement");
  for (int n = 0; n < f.points; ++n) CHECK(u[3 * n + 1] == doctest::Approx(result.state.u0[2 * n + 1]));

  CHECK_THROWS_AS(export_macro_vtk("/proc/microcontact/none/macro.vtk", model, result.state), IoError);
}

TEST_CASE("micro export and mesh round trip") {
  const CellContext ctx(generate_cell_slit({0.6, 0.02, 0.1}), plane_strain_tensor(2.3, 0.3));
  MicroState state = MicroState::virgin(ctx);
  solve_local_contact(state, {0.014, -0.04, 0.0}, ctx);
  REQUIRE(!state.active.empty());

  std::stringstream undeformed;
  write_micro_vtk(undeformed, ctx, state, 0.0);
  const auto f0 = read_vtk(undeformed);
  REQUIRE(f0.points == ctx.mesh().num_nodes());
  for (int n = 0; n < f0.points; ++n) {
    CHECK(f0.coords[3 * n] == ctx.mesh().nodes[n].x());
    CHECK(f0.coords[3 * n + 1] == ctx.mesh().nodes[n].y());
  }
  CHECK(f0.cells == ctx.mesh().num_triangles());
  for (int t : f0.types) CHECK(t == 5);

  std::stringstream deformed;
  write_micro_vtk(deformed, ctx, state, 2.0);
  const auto f = read_vtk(deformed);
  for (int n = 0; n < f.points; ++n) {
    CHECK(f.coords[3 * n] == doctest::Approx(ctx.mesh().nodes[n].x() + 2.0 * state.u_mic_full[2 * n]));
  }
  const auto& lambda = f.arrays.at("lambda");
  double top = 0.0;
  for (double x : lambda) {
    CHECK(x >= 0.0);
    top = std::max(top, x);
  }
  CHECK(top == doctest::Approx(state.lambda.maxCoeff()).epsilon(0.5));
  for (const char* name : {"sigma_xx", "sigma_yy", "sigma_xy"}) CHECK(f.arrays.at(name).size() == f.cells);

  const auto dir = scratch("micro");
  export_micro_records(dir / "records.csv", ctx, state);
  const auto rows = lines_of(dir / "records.csv");
  CHECK(rows.size() == static_cast<size_t>(ctx.num_records()) + 1);
  CHECK(rows[0] == "record,t,x,y,gap,lambda");

  save_cell_mesh(ctx.mesh(), dir / "cell.cellmesh");
  const auto back = load_cell_mesh(dir / "cell.cellmesh");
  CHECK(back.nodes == ctx.mesh().nodes);
  CHECK(back.triangles == ctx.mesh().triangles);
  CHECK(back.plus_edges.size() == ctx.mesh().plus_edges.size());
}

TEST_CASE("convergence log") {
  const auto path = scratch("log") / "convergence.csv";
  IterationRecord r;
  r.step = 1;
  r.method = MacroMethod::mc_newton;
  for (int k = 1; k <= 10; ++k) {
    r.outer_iter = k;
    r.norm_r = std::pow(10.0, -k);
    r.n_active_total = k;
    append_convergence(path, r);
  }
  const auto rows = lines_of(path);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "step,outer_iter,method,norm_du,norm_r,norm_lambda,n_active_total");
  CHECK(rows[1] == "1,1,mc-newton,0,0.1,0,1");
  CHECK(rows[10] == "1,10,mc-newton,0,1e-10,0,10");
  CHECK_THROWS_AS(append_convergence("/proc/microcontact/none.csv", r), IoError);
}

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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/io/config.hpp"
#include "microcontact/mesh/mesh_io.hpp"

namespace microcontact {

using nlohmann::json;

namespace {

constexpr const char* kSides[4] = {"left", "right", "bottom", "top"};

std::string side_name(Side s) { return kSides[static_cast<int>(s)]; }

Side parse_side(const json& j, const std::string& where) {
  if (j.is_string()) {
    for (int s = 0; s < 4; ++s) {
      if (j.get<std::string>() == kSides[s]) return static_cast<Side>(s);
    }
  }
  throw ConfigError(where + ": side must be one of left, right, bottom, top");
}

int parse_component(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j == "x") return 0;
    if (j == "y") return 1;
  } else if (j.is_number_integer()) {
    const int c = j.get<int>();
    if (c == 0 || c == 1) return c;
  }
  throw ConfigError(where + ": component must be x or y");
}

std::string kind_name(CellKind k) {
  switch (k) {
    case CellKind::slit:
      return "slit";
    case CellKind::ring:
      return "ring";
    case CellKind::solid:
      return "solid";
    case CellKind::file:
      return "file";
  }
  return "slit";
}

// Reads the members of one JSON object and remembers which keys were used.
class Section {
 public:
  Section(const json& j, std::string path, std::vector<std::string>* warnings)
      : j_(j), path_(std::move(path)), warnings_(warnings) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  ~Section() {
    if (!warnings_) return;
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) warnings_->push_back("unknown key " + path_ + "." + key);
    }
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + " has the wrong type");
    }
  }

  const json& at(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }
  std::string path(const std::string& key) const { return path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string>* warnings_;
  std::set<std::string> used_;
};

void read_cell(const json& j, CellConfig& c, std::vector<std::string>* warnings) {
  Section s(j, "cell", warnings);
  if (s.has("kind")) {
    const auto& k = s.at("kind");
    bool ok = false;
    for (auto kind : {CellKind::slit, CellKind::ring, CellKind::solid, CellKind::file}) {
      if (k.is_string() && k.get<std::string>() == kind_name(kind)) {
        c.kind = kind;
        ok = true;
      }
    }
    if (!ok) throw ConfigError("cell.kind must be slit, ring, solid or file");
  }
  s.get("slit_width", c.slit.slit_width);
  s.get("slit_gap", c.slit.slit_gap);
  s.get("hole_radius", c.ring.hole_radius);
  s.get("inclusion_radius", c.ring.inclusion_radius);
  s.get("spoke_angle", c.ring.spoke_angle);
  s.get("path", c.path);
  if (s.has("h")) {
    double h = 0.0;
    s.get("h", h);
    switch (c.kind) {
      case CellKind::ring:
        c.ring.target_edge_length = h;
        break;
      case CellKind::solid:
        c.solid_edge_length = h;
        break;
      default:
        c.slit.target_edge_length = h;
    }
  }
}

void read_macro(const json& j, MacroConfig& m, std::vector<std::string>* warnings) {
  Section s(j, "macro", warnings);
  s.get("nx", m.nx);
  s.get("ny", m.ny);
  s.get("lx", m.lx);
  s.get("ly", m.ly);
  s.get("load_steps", m.load_steps);
  if (s.has("fixed")) {
    m.boundary.fixed.clear();
    for (const auto& e : s.at("fixed")) {
      Section f(e, s.path("fixed[]"), warnings);
      FixedDof d;
      d.side = parse_side(f.at("side"), f.path("side"));
      d.component = parse_component(f.at("component"), f.path("component"));
      f.get("value", d.value);
      m.boundary.fixed.push_back(d);
    }
  }
  if (s.has("tied")) {
    m.boundary.tied.clear();
    for (const auto& e : s.at("tied")) {
      Section t(e, s.path("tied[]"), warnings);
      m.boundary.tied.push_back(
          {parse_side(t.at("side"), t.path("side")), parse_component(t.at("component"), t.path("component"))});
    }
  }
  if (s.has("tractions")) {
    m.boundary.tractions.clear();
    for (const auto& e : s.at("tractions")) {
      Section t(e, s.path("tractions[]"), warnings);
      Traction tr;
      tr.side = parse_side(t.at("side"), t.path("side"));
      std::vector<double> v;
      t.get("value", v);
      if (v.size() != 2) throw ConfigError(t.path("value") + " must hold two numbers");
      tr.value = {v[0], v[1]};
      m.boundary.tractions.push_back(tr);
    }
  }
}

void read_solver(const json& j, SolverConfig& c, std::vector<std::string>* warnings) {
  Section s(j, "solver", warnings);
  if (s.has("method")) {
    const auto& m = s.at("method");
    if (!m.is_string()) throw ConfigError("solver.method must be a string");
    c.method = parse_method(m.get<std::string>());
  }
  if (s.has("gamma")) {
    const auto& g = s.at("gamma");
    if (g.is_string() && g == "full") {
      c.gamma = kFullGamma;
    } else if (g.is_number_integer() && g.get<int>() >= 0) {
      c.gamma = g.get<int>();
    } else {
      throw ConfigError("solver.gamma must be a non-negative integer or \"full\"");
    }
  }
  s.get("tol_outer", c.tol_outer);
  s.get("plateau_tol", c.plateau_tol);
  s.get("max_outer", c.max_outer);
  s.get("micro_tol", c.micro_tol);
  s.get("micro_max_iter", c.micro_max_iter);
  s.get("beta0", c.beta0);
  s.get("uzawa_tol", c.uzawa_tol);
  s.get("uzawa_max_iter", c.uzawa_max_iter);
  s.get("newton_tol", c.newton_tol);
  s.get("newton_max_iter", c.newton_max_iter);
  s.get("threads", c.threads);
}

void read_output(const json& j, OutputConfig& o, std::vector<std::string>* warnings) {
  Section s(j, "output", warnings);
  s.get("directory", o.directory);
  if (s.has("formats")) {
    std::vector<std::string> f;
    s.get("formats", f);
    o.vtk = o.csv = false;
    for (const auto& x : f) {
      if (x == "vtk") {
        o.vtk = true;
      } else if (x == "csv") {
        o.csv = true;
      } else {
        throw ConfigError("output.formats entries must be vtk or csv");
      }
    }
  }
  s.get("deform_scale", o.deform_scale);
  s.get("micro_points", o.micro_points);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<std::string> preset_names() { return {"uniaxial", "bending"}; }

ProblemConfig preset(std::string_view name) {
  ProblemConfig c;
  if (name == "uniaxial") {
    c.name = "uniaxial";
    c.cell.kind = CellKind::slit;
    c.macro.nx = 2;
    c.macro.ny = 1;
    c.macro.boundary.fixed = {{Side::left, 0, 0.0}, {Side::bottom, 1, 0.0}};
    c.macro.boundary.tied = {{Side::right, 0}, {Side::top, 1}};
    c.macro.boundary.tractions = {{Side::top, Point(0.0, -0.1)}};
    c.output.micro_points = {0};
  } else if (name == "bending") {
    c.name = "bending";
    c.cell.kind = CellKind::ring;
    c.macro.nx = 4;
    c.macro.ny = 4;
    c.macro.boundary.fixed = {{Side::bottom, 0, 0.0}, {Side::bottom, 1, 0.0}};
    c.macro.boundary.tractions = {{Side::top, Point(0.01, 0.0)}};
    // bottom-left and bottom-right corners of the clamped edge
    c.output.micro_points = {0, 13};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected uniaxial or bending)");
  }
  return c;
}

void validate(const ProblemConfig& c) {
  if (!positive(c.young)) throw ConfigError("material.E must be positive");
  if (!(c.poisson > -1.0 && c.poisson < 0.5)) throw ConfigError("material.nu must lie in (-1, 0.5)");
  if (c.cell.kind == CellKind::file && c.cell.path.empty()) throw ConfigError("cell.path is required for kind file");
  if (!positive(c.cell.slit.target_edge_length) || !positive(c.cell.ring.target_edge_length) ||
      !positive(c.cell.solid_edge_length)) {
    throw ConfigError("cell.h must be positive");
  }
  if (c.macro.nx < 1 || c.macro.ny < 1) throw ConfigError("macro.nx and macro.ny must be at least 1");
  if (!positive(c.macro.lx) || !positive(c.macro.ly)) throw ConfigError("macro.lx and macro.ly must be positive");
  if (c.macro.load_steps < 1) throw ConfigError("macro.load_steps must be at least 1");
  for (const auto& t : c.macro.boundary.tractions) {
    if (!t.value.allFinite()) throw ConfigError("traction values must be finite");
  }
  for (const auto& f : c.macro.boundary.fixed) {
    if (!std::isfinite(f.value)) throw ConfigError("prescribed displacements must be finite");
  }
  const auto& s = c.solver;
  for (double tol : {s.tol_outer, s.plateau_tol, s.micro_tol, s.uzawa_tol, s.newton_tol}) {
    if (!positive(tol)) throw ConfigError("solver tolerances must be positive");
  }
  if (s.max_outer < 1 || s.micro_max_iter < 1 || s.uzawa_max_iter < 1 || s.newton_max_iter < 1) {
    throw ConfigError("solver iteration limits must be at least 1");
  }
  if (!std::isfinite(s.beta0) || s.beta0 < 0.0) throw ConfigError("solver.beta0 must be >= 0 (0 selects the estimate)");
  if (s.gamma < kFullGamma) throw ConfigError("solver.gamma must be a hop count or full");
  if (s.threads < 0) throw ConfigError("solver.threads must be >= 0");
  if (!std::isfinite(c.output.deform_scale)) throw ConfigError("output.deform_scale must be finite");
  const int points = 4 * c.macro.nx * c.macro.ny;
  for (int q : c.output.micro_points) {
    if (q < 0 || q >= points) throw ConfigError("output.micro_points entry out of range");
  }
}

ProblemConfig parse_config(std::string_view text, std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  ProblemConfig c;
  {
    Section root(j, "config", warnings);
    if (root.has("preset")) {
      const auto& p = root.at("preset");
      if (!p.is_string()) throw ConfigError("preset must be a string");
      c = preset(p.get<std::string>());
    }
    root.get("name", c.name);
    if (root.has("material")) {
      Section m(root.at("material"), "material", warnings);
      m.get("E", c.young);
      m.get("nu", c.poisson);
    }
    if (root.has("cell")) read_cell(root.at("cell"), c.cell, warnings);
    if (root.has("macro")) read_macro(root.at("macro"), c.macro, warnings);
    if (root.has("solver")) read_solver(root.at("solver"), c.solver, warnings);
    if (root.has("output")) read_output(root.at("output"), c.output, warnings);
  }
  validate(c);
  return c;
}

ProblemConfig load_config(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), warnings);
}

json to_json(const ProblemConfig& c) {
  json j;
  j["name"] = c.name;
  j["material"] = {{"E", c.young}, {"nu", c.poisson}};
  json cell = {{"kind", kind_name(c.cell.kind)},
               {"slit_width", c.cell.slit.slit_width},
               {"slit_gap", c.cell.slit.slit_gap},
               {"hole_radius", c.cell.ring.hole_radius},
               {"inclusion_radius", c.cell.ring.inclusion_radius},
               {"spoke_angle", c.cell.ring.spoke_angle},
               {"path", c.cell.path}};
  cell["h"] = c.cell.kind == CellKind::ring    ? c.cell.ring.target_edge_length
              : c.cell.kind == CellKind::solid ? c.cell.solid_edge_length
                                               : c.cell.slit.target_edge_length;
  j["cell"] = cell;
  json fixed = json::array(), tied = json::array(), tractions = json::array();
  for (const auto& f : c.macro.boundary.fixed) {
    fixed.push_back({{"side", side_name(f.side)}, {"component", f.component ? "y" : "x"}, {"value", f.value}});
  }
  for (const auto& t : c.macro.boundary.tied) {
    tied.push_back({{"side", side_name(t.side)}, {"component", t.component ? "y" : "x"}});
  }
  for (const auto& t : c.macro.boundary.tractions) {
    tractions.push_back({{"side", side_name(t.side)}, {"value", {t.value.x(), t.value.y()}}});
  }
  j["macro"] = {{"nx", c.macro.nx},       {"ny", c.macro.ny}, {"lx", c.macro.lx},
                {"ly", c.macro.ly},       {"load_steps", c.macro.load_steps},
                {"fixed", fixed},         {"tied", tied},     {"tractions", tractions}};
  const auto& s = c.solver;
  j["solver"] = {{"method", std::string(method_name(s.method))},
                 {"tol_outer", s.tol_outer},
                 {"plateau_tol", s.plateau_tol},
                 {"max_outer", s.max_outer},
                 {"micro_tol", s.micro_tol},
                 {"micro_max_iter", s.micro_max_iter},
                 {"beta0", s.beta0},
                 {"uzawa_tol", s.uzawa_tol},
                 {"uzawa_max_iter", s.uzawa_max_iter},
                 {"newton_tol", s.newton_tol},
                 {"newton_max_iter", s.newton_max_iter},
                 {"threads", s.threads}};
  if (s.gamma == kFullGamma) {
    j["solver"]["gamma"] = "full";
  } else {
    j["solver"]["gamma"] = s.gamma;
  }
  json formats = json::array();
  if (c.output.vtk) formats.push_back("vtk");
  if (c.output.csv) formats.push_back("csv");
  j["output"] = {{"directory", c.output.directory},
                 {"formats", formats},
                 {"deform_scale", c.output.deform_scale},
                 {"micro_points", c.output.micro_points}};
  return j;
}

void save_config(const ProblemConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(cfg).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

PeriodicCellMesh build_cell(const CellConfig& cfg) {
  switch (cfg.kind) {
    case CellKind::slit:
      return generate_cell_slit(cfg.slit);
    case CellKind::ring:
      return generate_cell_ring(cfg.ring);
    case CellKind::solid:
      return generate_cell_solid(cfg.solid_edge_length);
    case CellKind::file:
      return load_cell_mesh(cfg.path);
  }
  throw ConfigError("unknown cell kind");
}

MacroModel build_macro(const MacroConfig& cfg) {
  return MacroModel(generate_macro_mesh(cfg.nx, cfg.ny, cfg.lx, cfg.ly), cfg.boundary);
}

TwoScaleOptions solver_options(const ProblemConfig& cfg) {
  const auto& s = cfg.solver;
  TwoScaleOptions o;
  o.method = s.method;
  o.gamma = s.gamma;
  o.load_steps = cfg.macro.load_steps;
  o.tol_outer = s.tol_outer;
  o.plateau_tol = s.plateau_tol;
  o.max_outer = s.max_outer;
  o.micro.tol = s.micro_tol;
  o.micro.max_iter = s.micro_max_iter;
  o.uzawa.beta0 = s.beta0;
  o.uzawa.tol = s.uzawa_tol;
  o.uzawa.max_iter = s.uzawa_max_iter;
  o.newton.tol = s.newton_tol;
  o.newton.max_iter = s.newton_max_iter;
  o.threads = s.threads;
  return o;
}

std::filesystem::path output_directory(const ProblemConfig& cfg) {
  if (const char* env = std::getenv("MICROCONTACT_OUT"); env && *env) return env;
  return cfg.output.directory;
}

}  // namespace microcontact

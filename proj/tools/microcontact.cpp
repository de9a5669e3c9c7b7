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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "microcontact/check/suites.hpp"
#include "microcontact/errors.hpp"
#include "microcontact/fem/elasticity.hpp"
#include "microcontact/io/config.hpp"
#include "microcontact/io/export.hpp"
#include "microcontact/mesh/generators.hpp"
#include "microcontact/mesh/mesh_io.hpp"

using namespace microcontact;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInput = 1, kNumerical = 2, kPropertyFailed = 3 };

struct CellFlags {
  std::string cell = "slit";
  double h = 0.0;  // 0 keeps the generator default
};

CellConfig cell_config(const CellFlags& f) {
  CellConfig c;
  if (f.cell == "slit") {
    c.kind = CellKind::slit;
  } else if (f.cell == "ring") {
    c.kind = CellKind::ring;
  } else if (f.cell == "solid") {
    c.kind = CellKind::solid;
  } else {
    c.kind = CellKind::file;
    c.path = f.cell;
  }
  if (f.h > 0.0) c.slit.target_edge_length = c.ring.target_edge_length = c.solid_edge_length = f.h;
  return c;
}

fs::path resolve_out(const std::string& flag, const fs::path& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MICROCONTACT_OUT"); env && *env) return env;
  return fallback;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

SymTensor2 parse_strain(const std::string& text) {
  std::stringstream ss(text);
  std::vector<double> v;
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("--strain expects three numbers e11,e22,e12, got '" + text + "'");
    }
  }
  if (v.size() != 3) throw ConfigError("--strain expects three numbers e11,e22,e12, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

int parse_gamma(const std::string& text) {
  if (text == "full") return kFullGamma;
  try {
    size_t used = 0;
    const int g = std::stoi(text, &used);
    if (used == text.size() && g >= 0) return g;
  } catch (const std::exception&) {
  }
  throw ConfigError("--gamma expects a non-negative integer or full, got '" + text + "'");
}

int make_mesh(const CellFlags& flags, const std::string& output, bool vtk) {
  const auto mesh = build_cell(cell_config(flags));
  const fs::path path = output.empty() ? prepare_dir(resolve_out("", "out")) / (flags.cell + ".cellmesh") : fs::path(output);
  if (path.has_parent_path()) prepare_dir(path.parent_path());
  save_cell_mesh(mesh, path);
  std::cout << "wrote " << path.string() << " (" << mesh.num_nodes() << " nodes, " << mesh.num_triangles()
            << " triangles)\n";
  if (vtk) {
    const CellContext ctx(mesh, plane_strain_tensor(2.3, 0.3));
    fs::path v = path;
    v.replace_extension(".vtk");
    export_micro_vtk(v, ctx, MicroState::virgin(ctx), 0.0);
    std::cout << "wrote " << v.string() << '\n';
  }
  return kOk;
}

struct MicroFlags {
  CellFlags cell;
  std::string strain;
  std::string out;
  double young = 2.3;
  double poisson = 0.3;
  double tol = 1e-10;
  int max_iter = 50;
  double deform_scale = 1.0;
};

int micro(const MicroFlags& f) {
  const SymTensor2 e = parse_strain(f.strain);
  ProblemConfig cfg;
  cfg.young = f.young;
  cfg.poisson = f.poisson;
  cfg.cell = cell_config(f.cell);
  cfg.solver.micro_tol = f.tol;
  cfg.solver.micro_max_iter = f.max_iter;
  validate(cfg);
  const CellContext ctx(build_cell(cfg.cell), plane_strain_tensor(cfg.young, cfg.poisson));
  const fs::path dir = prepare_dir(resolve_out(f.out, "out"));

  auto st = MicroState::virgin(ctx);
  MicroOptions opts;
  opts.tol = f.tol;
  opts.max_iter = f.max_iter;
  solve_local_contact(st, e, ctx, opts);

  save_cell_mesh(ctx.mesh(), dir / "cell.cellmesh");
  export_micro_vtk(dir / "cell.vtk", ctx, st, f.deform_scale);
  export_micro_records(dir / "records.csv", ctx, st);
  {
    std::ofstream log(dir / "micro_convergence.csv");
    log << "iteration,residual\n";
    for (size_t k = 0; k < st.report.history.size(); ++k) log << k << ',' << format_number(st.report.history[k]) << '\n';
    if (!log) throw IoError("cannot write " + (dir / "micro_convergence.csv").string());
  }
  std::cout << "records " << ctx.num_records() << ", active " << st.active.size() << ", iterations "
            << st.report.iterations << ", residual " << sci(st.report.residual) << '\n';
  std::cout << "sigma " << format_number(st.sigma.xx) << ' ' << format_number(st.sigma.yy) << ' '
            << format_number(st.sigma.xy) << '\n';
  std::cout << "output " << dir.string() << '\n';
  return kOk;
}

struct MacroFlags {
  std::string preset = "uniaxial";
  std::string config;
  std::string method;
  std::string gamma;
  std::string out;
  int load_steps = 0;
  int max_outer = 0;
  int threads = -1;
};

int macro(const MacroFlags& f) {
  std::vector<std::string> warnings;
  ProblemConfig cfg = f.config.empty() ? preset(f.preset) : load_config(f.config, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (!f.method.empty()) cfg.solver.method = parse_method(f.method);
  if (!f.gamma.empty()) cfg.solver.gamma = parse_gamma(f.gamma);
  if (f.load_steps > 0) cfg.macro.load_steps = f.load_steps;
  if (f.max_outer > 0) cfg.solver.max_outer = f.max_outer;
  if (f.threads >= 0) cfg.solver.threads = f.threads;
  validate(cfg);

  const fs::path dir = prepare_dir(f.out.empty() ? output_directory(cfg) : fs::path(f.out));
  cfg.output.directory = dir.string();
  save_config(cfg, dir / "config.json");
  const MacroModel model = build_macro(cfg.macro);
  const CellContext cell(build_cell(cfg.cell), plane_strain_tensor(cfg.young, cfg.poisson));

  const fs::path csv = dir / "convergence.csv";
  fs::remove(csv);
  IterationObserver observer;
  if (cfg.output.csv) observer = [&](const IterationRecord& r) { append_convergence(csv, r); };
  const auto result = two_scale_solve(model, cell, solver_options(cfg), observer);

  if (cfg.output.vtk) {
    export_macro_vtk(dir / "macro.vtk", model, result.state);
    for (int q : cfg.output.micro_points) {
      const std::string stem = "micro_" + std::to_string(q);
      export_micro_vtk(dir / (stem + ".vtk"), cell, result.state.micro[q], cfg.output.deform_scale);
      export_micro_records(dir / (stem + "_records.csv"), cell, result.state.micro[q]);
    }
  }
  std::cout << cfg.name << ' ' << method_name(cfg.solver.method) << ": " << result.history.size()
            << " outer iterations, final residual " << sci(result.final_residual)
            << (result.plateau ? " (plateau)" : "") << ", active records " << result.state.active_total() << '\n';
  std::cout << "output " << dir.string() << '\n';
  return kOk;
}

int check(const std::string& suite, const std::string& fault, int threads) {
  CheckOptions opts;
  if (!fault.empty()) {
    if (fault != "h-sign") throw ConfigError("unknown fault '" + fault + "'");
    opts.flip_h_sign = true;
  }
  opts.threads = std::max(threads, 1);
  const auto results = run_suite(suite, opts);
  print_results(std::cout, results);
  return all_passed(results) ? kOk : kPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-scale contact solver for periodic porous elastic media"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = -1;
  app.add_option("--threads", threads, "worker threads for the quadrature point loop (0 = hardware)")
      ->check(CLI::NonNegativeNumber);

  CellFlags mesh_flags;
  std::string mesh_output;
  bool mesh_vtk = false;
  auto* mk = app.add_subcommand("make-mesh", "generate a periodic cell mesh");
  mk->add_option("--cell", mesh_flags.cell, "slit, ring, solid or a .cellmesh path")->capture_default_str();
  mk->add_option("--edge-length", mesh_flags.h, "target edge length in cell units")->check(CLI::PositiveNumber);
  mk->add_option("-o,--output", mesh_output, "mesh file (default <out>/<cell>.cellmesh)");
  mk->add_flag("--vtk", mesh_vtk, "also write the undeformed cell as VTK");

  MicroFlags mf;
  auto* mi = app.add_subcommand("micro", "solve one cell contact problem");
  mi->add_option("--cell", mf.cell.cell, "slit, ring, solid or a .cellmesh path")->capture_default_str();
  mi->add_option("--strain", mf.strain, "macro strain e11,e22,e12 (tensor components, e12 = half the shear angle)")
      ->required();
  mi->add_option("--edge-length", mf.cell.h, "target edge length in cell units")->check(CLI::PositiveNumber);
  mi->add_option("--E", mf.young, "Young's modulus")->capture_default_str();
  mi->add_option("--nu", mf.poisson, "Poisson's ratio")->capture_default_str();
  mi->add_option("--tol", mf.tol, "complementarity tolerance")->capture_default_str();
  mi->add_option("--max-iter", mf.max_iter, "semismooth Newton iterations")->capture_default_str();
  mi->add_option("--deform-scale", mf.deform_scale, "displacement scale of the VTK geometry")->capture_default_str();
  mi->add_option("--out", mf.out, "output directory (default ./out or $MICROCONTACT_OUT)");

  MacroFlags af;
  auto* ma = app.add_subcommand("macro", "run the two-scale solver");
  auto* pre = ma->add_option("--preset", af.preset, "uniaxial or bending")->capture_default_str();
  ma->add_option("--config", af.config, "JSON configuration")->excludes(pre);
  ma->add_option("--method", af.method, "ml, mc-uzawa or mc-newton");
  ma->add_option("--gamma", af.gamma, "hop distance of the macro contact set, or full");
  ma->add_option("--load-steps", af.load_steps, "uniform load steps");
  ma->add_option("--max-outer", af.max_outer, "outer iterations per load step");
  ma->add_option("--out", af.out, "output directory (default ./out or $MICROCONTACT_OUT)");

  std::string suite = "all", fault;
  auto* ch = app.add_subcommand("check", "run the property suites");
  ch->add_option("--suite", suite, "micro, homog, macro or all")->capture_default_str();
  ch->add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*mk) return make_mesh(mesh_flags, mesh_output, mesh_vtk);
    if (*mi) return micro(mf);
    if (*ma) {
      af.threads = threads;
      return macro(af);
    }
    return check(suite, fault, threads);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const FactorizationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}

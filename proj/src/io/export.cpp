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

#include "microcontact/io/export.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "microcontact/errors.hpp"
#include "microcontact/fem/assembly.hpp"

namespace microcontact {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_scalars(std::ostream& out, const char* name, const std::vector<double>& v) {
  out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double x : v) out << format_number(x) << '\n';
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_macro_vtk(std::ostream& out, const MacroModel& model, const Eigen::VectorXd& u_full,
                     std::span<const SymTensor2> sigma, std::span<const int> n_active) {
  const auto& mesh = model.mesh();
  const int np = model.num_points();
  if (u_full.size() != 2 * mesh.num_nodes() || static_cast<int>(sigma.size()) != np ||
      static_cast<int>(n_active.size()) != np) {
    throw ContractError("write_macro_vtk: field sizes do not match the model");
  }
  out << "# vtk DataFile Version 3.0\nmicrocontact macro\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) out << format_number(p.x()) << ' ' << format_number(p.y()) << " 0\n";
  const int ne = mesh.num_elements();
  out << "CELLS " << ne << ' ' << 5 * ne << '\n';
  for (const auto& q : mesh.quads) out << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  out << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) out << "9\n";

  std::vector<double> sxx(ne, 0.0), syy(ne, 0.0), sxy(ne, 0.0), contact(ne, 0.0), count(ne, 0.0);
  for (int q = 0; q < np; ++q) {
    const int e = model.quadrature()[q].element;
    sxx[e] += sigma[q].xx;
    syy[e] += sigma[q].yy;
    sxy[e] += sigma[q].xy;
    contact[e] += n_active[q];
    count[e] += 1.0;
  }
  for (int e = 0; e < ne; ++e) {
    if (count[e] == 0.0) continue;
    sxx[e] /= count[e];
    syy[e] /= count[e];
    sxy[e] /= count[e];
    contact[e] /= count[e];
  }
  out << "CELL_DATA " << ne << '\n';
  write_scalars(out, "sigma_xx", sxx);
  write_scalars(out, "sigma_yy", syy);
  write_scalars(out, "sigma_xy", sxy);
  write_scalars(out, "n_contact", contact);

  out << "POINT_DATA " << mesh.num_nodes() << "\nVECTORS displacement double\n";
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    out << format_number(u_full[2 * n]) << ' ' << format_number(u_full[2 * n + 1]) << " 0\n";
  }
}

void export_macro_vtk(const std::filesystem::path& path, const MacroModel& model, const MacroState& state) {
  std::vector<int> n_active;
  n_active.reserve(state.micro.size());
  for (const auto& m : state.micro) n_active.push_back(static_cast<int>(m.active.size()));
  const auto sigma = state.stresses();
  auto out = open_for_write(path);
  write_macro_vtk(out, model, state.u0, sigma, n_active);
  finish(out, path);
}

void write_micro_vtk(std::ostream& out, const CellContext& ctx, const MicroState& state, double deform_scale) {
  const auto& mesh = ctx.mesh();
  const int nn = mesh.num_nodes();
  if (state.u_mic_full.size() != 2 * nn || state.lambda.size() != ctx.num_records()) {
    throw ContractError("write_micro_vtk: state does not belong to this cell");
  }
  out << "# vtk DataFile Version 3.0\nmicrocontact cell\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nn << " double\n";
  for (int n = 0; n < nn; ++n) {
    const Point y = mesh.nodes[n] + deform_scale * Point(state.u_mic_full[2 * n], state.u_mic_full[2 * n + 1]);
    out << format_number(y.x()) << ' ' << format_number(y.y()) << " 0\n";
  }
  const int nt = mesh.num_triangles();
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t) out << "5\n";

  const auto strains = element_strains(mesh, state.u_mic_full);
  std::vector<double> sxx(nt), syy(nt), sxy(nt);
  for (int t = 0; t < nt; ++t) {
    const SymTensor2 s = ctx.material().stress(strains[t]);
    sxx[t] = s.xx;
    syy[t] = s.yy;
    sxy[t] = s.xy;
  }
  out << "CELL_DATA " << nt << '\n';
  write_scalars(out, "sigma_xx", sxx);
  write_scalars(out, "sigma_yy", syy);
  write_scalars(out, "sigma_xy", sxy);

  // Records sit on nodes or inside face edges; spread each to the edge ends
  // by its linear weights and normalize.
  std::vector<double> lambda(nn, 0.0), weight(nn, 0.0);
  auto deposit = [&](const SidePoint& p, double value) {
    if (p.is_node()) {
      lambda[p.node_a] += value;
      weight[p.node_a] += 1.0;
      return;
    }
    lambda[p.node_a] += (1.0 - p.weight) * value;
    weight[p.node_a] += 1.0 - p.weight;
    lambda[p.node_b] += p.weight * value;
    weight[p.node_b] += p.weight;
  };
  const auto& records = ctx.pairing().records;
  for (int r = 0; r < ctx.num_records(); ++r) {
    deposit(records[r].plus, state.lambda[r]);
    deposit(records[r].minus, state.lambda[r]);
  }
  for (int n = 0; n < nn; ++n) {
    if (weight[n] > 0.0) lambda[n] /= weight[n];
  }
  out << "POINT_DATA " << nn << "\nVECTORS displacement double\n";
  for (int n = 0; n < nn; ++n) {
    out << format_number(state.u_mic_full[2 * n]) << ' ' << format_number(state.u_mic_full[2 * n + 1]) << " 0\n";
  }
  write_scalars(out, "lambda", lambda);
}

void export_micro_vtk(const std::filesystem::path& path, const CellContext& ctx, const MicroState& state,
                      double deform_scale) {
  auto out = open_for_write(path);
  write_micro_vtk(out, ctx, state, deform_scale);
  finish(out, path);
}

void export_micro_records(const std::filesystem::path& path, const CellContext& ctx, const MicroState& state) {
  auto out = open_for_write(path);
  out << "record,t,x,y,gap,lambda\n";
  const auto& records = ctx.pairing().records;
  for (int r = 0; r < ctx.num_records(); ++r) {
    const Point p = records[r].plus.position(ctx.mesh());
    out << r << ',' << format_number(records[r].t) << ',' << format_number(p.x()) << ',' << format_number(p.y())
        << ',' << format_number(state.gap[r]) << ',' << format_number(state.lambda[r]) << '\n';
  }
  finish(out, path);
}

void append_convergence(const std::filesystem::path& path, const IterationRecord& record) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (fresh && path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot append to " + path.string());
  if (fresh) out << kConvergenceHeader << '\n';
  out << record.step << ',' << record.outer_iter << ',' << method_name(record.method) << ','
      << format_number(record.norm_du) << ',' << format_number(record.norm_r) << ','
      << format_number(record.norm_lambda) << ',' << record.n_active_total << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace microcontact

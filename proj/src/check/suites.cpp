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

#include "microcontact/check/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/fem/elasticity.hpp"
#include "microcontact/homog/correctors.hpp"
#include "microcontact/macro/two_scale.hpp"
#include "microcontact/mesh/generators.hpp"
#include "microcontact/micro/local_contact.hpp"

namespace microcontact {

namespace {

using Outcome = std::pair<bool, std::string>;

struct Property {
  const char* name;
  std::function<Outcome()> run;
};

const SymTensor2 kStrainA{0.014, -0.04, 0.0};
const SymTensor2 kStrainB{0.0, 0.0, 0.05};

const CellContext& slit_cell() {
  static const CellContext ctx(generate_cell_slit({}), plane_strain_tensor(2.3, 0.3));
  return ctx;
}

const CellContext& ring_cell() {
  static const CellContext ctx(generate_cell_ring({}), plane_strain_tensor(2.3, 0.3));
  return ctx;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}


MicroOptions micro_options(const CheckOptions& opts) {
  MicroOptions m;
  m.flip_h_sign = opts.flip_h_sign;
  return m;
}

Outcome kkt(const CellContext& ctx, const SymTensor2& e, const CheckOptions& opts) {
  auto st = MicroState::virgin(ctx);
  solve_local_contact(st, e, ctx, micro_options(opts));
  const double gap = st.gap.maxCoeff();
  const double lam = st.lambda.minCoeff();
  const double comp = std::abs(st.lambda.dot(st.gap));
  const bool ok = st.report.residual <= 1e-10 && st.report.iterations <= 30 && lam >= 0.0 && gap <= 1e-9 &&
                  comp <= 1e-10 && !st.active.empty();
  return {ok, "residual " + sci(st.report.residual) + ", iterations " + std::to_string(st.report.iterations) +
                  ", max gap " + sci(gap) + ", min lambda " + sci(lam) + ", active " +
                  std::to_string(st.active.size())};
}

Outcome fd_tangent(const CellContext& ctx, const SymTensor2& e, const CheckOptions& opts) {
  auto st = MicroState::virgin(ctx);
  solve_local_contact(st, e, ctx, micro_options(opts));
  const auto t = homogenized_tangent(ctx, solve_correctors(ctx, st.active));
  const auto chk = effective_stress_tangent_check(ctx, e, st.active, t.dh, 1e-7);
  return {chk.conclusive && chk.max_rel_error <= 1e-5, "max relative error " + sci(chk.max_rel_error)};
}

std::vector<Property> micro_properties(const CheckOptions& opts) {
  return {
      {"kkt_slit_strain_a", [opts] { return kkt(slit_cell(), kStrainA, opts); }},
      {"kkt_ring_strain_a", [opts] { return kkt(ring_cell(), kStrainA, opts); }},
      {"kkt_ring_strain_b", [opts] { return kkt(ring_cell(), kStrainB, opts); }},
      {"zero_strain_rest",
       [opts] {
         const auto& ctx = slit_cell();
         auto st = MicroState::virgin(ctx);
         solve_local_contact(st, {}, ctx, micro_options(opts));
         const double u = st.u_mic_full.cwiseAbs().maxCoeff();
         const double l = st.lambda.cwiseAbs().maxCoeff();
         return Outcome{u == 0.0 && l == 0.0 && st.active.empty(), "max |u| " + sci(u) + ", max |lambda| " + sci(l)};
       }},
      {"gap_annihilates_translations",
       [] {
         double worst = 0.0;
         for (const CellContext* ctx : {&slit_cell(), &ring_cell()}) {
           Eigen::VectorXd t(2 * ctx->mesh().num_nodes());
           for (int i = 0; i < ctx->mesh().num_nodes(); ++i) t.segment<2>(2 * i) = Point(0.7, -1.3);
           worst = std::max(worst, (ctx->gap().full * t).cwiseAbs().maxCoeff());
         }
         return Outcome{worst <= 1e-12, "max |G t| " + sci(worst)};
       }},
      {"periodic_shift_identity",
       [] {
         double worst = 0.0;
         for (const CellContext* ctx : {&slit_cell(), &ring_cell()}) {
           const auto& m = ctx->mesh();
           for (const auto& p : m.periodic_pairs) {
             worst = std::max(worst, (m.nodes[p.master] + p.shift - m.nodes[p.slave]).norm());
           }
         }
         return Outcome{worst <= 1e-12, "max mismatch " + sci(worst)};
       }},
  };
}

std::vector<Property> homog_properties(const CheckOptions& opts) {
  return {
      {"tangent_symmetric_positive",
       [opts] {
         const auto& ctx = slit_cell();
         auto st = MicroState::virgin(ctx);
         solve_local_contact(st, kStrainA, ctx, micro_options(opts));
         const auto dh = homogenized_tangent(ctx, solve_correctors(ctx, st.active)).dh;
         const double asym = (dh - dh.transpose()).cwiseAbs().maxCoeff();
         const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(dh).eigenvalues().minCoeff();
         return Outcome{asym <= 1e-9 * dh.norm() && min_eig > 0.0,
                        "asymmetry " + sci(asym) + ", smallest eigenvalue " + sci(min_eig)};
       }},
      {"tangent_fd_slit_strain_a", [opts] { return fd_tangent(slit_cell(), kStrainA, opts); }},
      {"tangent_fd_ring_strain_a", [opts] { return fd_tangent(ring_cell(), kStrainA, opts); }},
      {"tangent_fd_ring_strain_b", [opts] { return fd_tangent(ring_cell(), kStrainB, opts); }},
      {"open_cell_linearity",
       [opts] {
         const auto& ctx = slit_cell();
         const SymTensor2 e{0.01, 0.005, 0.002};
         auto st = MicroState::virgin(ctx);
         solve_local_contact(st, e, ctx, micro_options(opts));
         const auto dh = homogenized_tangent(ctx, solve_correctors(ctx, {})).dh;
         const double err = max_abs(st.sigma - stress_from_voigt(dh * strain_to_voigt(e)));
         return Outcome{st.active.empty() && err <= 1e-10, "stress error " + sci(err)};
       }},
      {"stiffening_nested_sets",
       [] {
         const auto& ctx = slit_cell();
         std::mt19937_64 rng(5);
         std::uniform_real_distribution<double> coin(0.0, 1.0);
         std::normal_distribution<double> g;
         std::vector<int> small, large;
         for (int i = 0; i < ctx.num_records(); ++i) {
           if (coin(rng) < 0.6) {
             large.push_back(i);
             if (coin(rng) < 0.5) small.push_back(i);
           }
         }
         const auto ds = homogenized_tangent(ctx, solve_correctors(ctx, small)).dh;
         const auto dl = homogenized_tangent(ctx, solve_correctors(ctx, large)).dh;
         double worst = 0.0;
         for (int k = 0; k < 100; ++k) {
           const Eigen::Vector3d x(g(rng), g(rng), g(rng));
           worst = std::min(worst, x.dot(dl * x) - x.dot(ds * x));
         }
         return Outcome{worst >= -1e-10, "most negative difference " + sci(worst)};
       }},
  };
}

MacroBoundary uniaxial_boundary(Point shift = Point::Zero(), double load = 0.1) {
  MacroBoundary bc;
  bc.fixed = {{Side::left, 0, shift.x()}, {Side::bottom, 1, shift.y()}};
  bc.tied = {{Side::right, 0}, {Side::top, 1}};
  if (load != 0.0) bc.tractions = {{Side::top, Point(0.0, -load)}};
  return bc;
}

TwoScaleOptions two_scale_options(MacroMethod m, const CheckOptions& opts) {
  TwoScaleOptions o;
  o.method = m;
  o.threads = opts.threads;
  o.micro.flip_h_sign = opts.flip_h_sign;
  return o;
}

std::vector<Property> macro_properties(const CheckOptions& opts) {
  return {
      {"zero_load_zero_solution",
       [opts] {
         const MacroModel model(generate_macro_mesh(2, 1), uniaxial_boundary(Point::Zero(), 0.0));
         const auto r = two_scale_solve(model, slit_cell(), two_scale_options(MacroMethod::mc_newton, opts));
         const double u = r.state.u0.cwiseAbs().maxCoeff();
         return Outcome{u == 0.0 && r.state.active_total() == 0, "max |u0| " + sci(u)};
       }},
      {"uniaxial_methods_agree",
       [opts] {
         const MacroModel model(generate_macro_mesh(2, 1), uniaxial_boundary());
         const auto ml = two_scale_solve(model, slit_cell(), two_scale_options(MacroMethod::ml, opts));
         const auto nw = two_scale_solve(model, slit_cell(), two_scale_options(MacroMethod::mc_newton, opts));
         const double du = (ml.state.u0 - nw.state.u0).cwiseAbs().maxCoeff();
         const double res = std::max(ml.final_residual, nw.final_residual);
         return Outcome{du <= 1e-8 && res <= 1e-13, "u0 difference " + sci(du) + ", residual " + sci(res)};
       }},
      {"uniaxial_stress_state",
       [opts] {
         const MacroModel model(generate_macro_mesh(2, 1), uniaxial_boundary());
         const auto r = two_scale_solve(model, slit_cell(), two_scale_options(MacroMethod::mc_newton, opts));
         double err = 0.0;
         for (const auto& s : r.state.stresses()) err = std::max(err, max_abs(s - SymTensor2{0.0, -0.1, 0.0}));
         bool kkt = true;
         for (const auto& m : r.state.micro) kkt = kkt && m.gap.maxCoeff() <= 1e-9 && m.lambda.minCoeff() >= 0.0;
         return Outcome{err <= 1e-10 && kkt && r.state.active_total() > 0,
                        "stress error " + sci(err) + (kkt ? "" : ", micro KKT violated")};
       }},
      {"translation_equivariance",
       [opts] {
         const Point shift(0.3, -0.2);
         const MacroModel a(generate_macro_mesh(2, 1), uniaxial_boundary());
         const MacroModel b(generate_macro_mesh(2, 1), uniaxial_boundary(shift));
         const auto o = two_scale_options(MacroMethod::mc_newton, opts);
         const auto ra = two_scale_solve(a, slit_cell(), o);
         const auto rb = two_scale_solve(b, slit_cell(), o);
         double err = 0.0;
         for (int i = 0; i < ra.state.u0.size() / 2; ++i) {
           err = std::max(err, (rb.state.u0.segment<2>(2 * i) - ra.state.u0.segment<2>(2 * i) - shift).norm());
         }
         for (int q = 0; q < a.num_points(); ++q) {
           err = std::max(err, max_abs(rb.state.micro[q].sigma - ra.state.micro[q].sigma));
         }
         return Outcome{err <= 1e-10, "max deviation " + sci(err)};
       }},
  };
}

std::vector<Property> properties_of(std::string_view suite, const CheckOptions& opts) {
  if (suite == "micro") return micro_properties(opts);
  if (suite == "homog") return homog_properties(opts);
  if (suite == "macro") return macro_properties(opts);
  throw ConfigError("unknown suite '" + std::string(suite) + "' (expected micro, homog, macro or all)");
}

}  // namespace

std::vector<std::string> suite_names() { return {"micro", "homog", "macro"}; }

std::vector<PropertyResult> run_suite(std::string_view suite, const CheckOptions& opts) {
  std::vector<PropertyResult> out;
  if (suite == "all") {
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, opts);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  for (const auto& p : properties_of(suite, opts)) {
    PropertyResult r;
    r.suite = suite;
    r.name = p.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      std::tie(r.passed, r.detail) = p.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

void print_results(std::ostream& out, const std::vector<PropertyResult>& results) {
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-4s %-6s %-32s", r.passed ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str());
    out << buf << ' ' << r.detail << '\n';
  }
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  out << results.size() - failed << " passed, " << failed << " failed\n";
}

bool all_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace microcontact

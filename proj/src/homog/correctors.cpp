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
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/homog/correctors.hpp"

namespace microcontact {

namespace {

constexpr double kRankThreshold = 1e-10;

Eigen::MatrixXd active_block(const CellContext& ctx, std::span<const int> active) {
  const int m = static_cast<int>(active.size());
  Eigen::MatrixXd css(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) css(a, b) = ctx.schur()(active[a], active[b]);
  }
  return css;
}

Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> decompose(const Eigen::MatrixXd& css) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(css);
  return cod;
}

void check_records(const CellContext& ctx, std::span<const int> records) {
  for (int r : records) {
    if (r < 0 || r >= ctx.num_records()) throw ContractError("contact record index out of range");
  }
}

}  // namespace

Correctors solve_correctors(const CellContext& ctx, std::span<const int> active) {
  check_records(ctx, active);
  const int m = static_cast<int>(active.size());
  Correctors out;
  out.active.assign(active.begin(), active.end());
  out.multipliers = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(m, 3);
  if (m == 0) {
    for (int a = 0; a < 3; ++a) out.w[a] = ctx.mode_response(a);
    return out;
  }
  const auto cod = decompose(active_block(ctx, active));
  out.deflated = m - static_cast<int>(cod.rank());
  for (int a = 0; a < 3; ++a) {
    // opening of the closed records produced by lift_a + T v_a must vanish
    const Eigen::VectorXd open = ctx.mode_opening(a) + ctx.gap().reduced * ctx.mode_response(a);
    Eigen::VectorXd rhs(m);
    for (int k = 0; k < m; ++k) rhs[k] = -open[active[k]];
    const Eigen::VectorXd mu = cod.solve(rhs);
    out.multipliers.col(a) = mu;
    out.w[a] = ctx.mode_response(a);
    for (int k = 0; k < m; ++k) out.w[a] += mu[k] * ctx.a_inv_gt().col(active[k]);
  }
  return out;
}

HomogenizedTangent homogenized_tangent(const CellContext& ctx, const Correctors& corr) {
  std::array<Eigen::VectorXd, 3> chi, k_chi;
  for (int a = 0; a < 3; ++a) {
    chi[a] = ctx.mode_lift(a) + ctx.space().expand(corr.w[a]);
    k_chi[a] = ctx.full_stiffness() * chi[a];
  }
  HomogenizedTangent t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t.dh(a, b) = chi[a].dot(k_chi[b]);
  }
  const double asym = (t.dh - t.dh.transpose()).norm();
  if (asym > 1e-9 * t.dh.norm()) {
    std::ostringstream os;
    os << "homogenized tangent is not symmetric (" << asym << ")";
    throw ConsistencyError(os.str());
  }
  t.dh = 0.5 * (t.dh + t.dh.transpose()).eval();
  t.correctors = corr.w;
  t.active_used = corr.active;
  t.deflated = corr.deflated;
  return t;
}

ContactSensitivity contact_sensitivity(const CellContext& ctx, const Correctors& corr,
                                       const Eigen::VectorXd& u_mic_full, std::span<const int> monitored) {
  check_records(ctx, monitored);
  ContactSensitivity s;
  s.records.assign(monitored.begin(), monitored.end());
  const Eigen::VectorXd opening = ctx.gap().opening(u_mic_full);
  std::array<Eigen::VectorXd, 3> dopen;
  for (int a = 0; a < 3; ++a) dopen[a] = ctx.mode_opening(a) + ctx.gap().reduced * corr.w[a];
  for (int r : monitored) {
    // gap convention: gap = -opening, Voigt dual so that p_hat : dE = sum_a p_a dE_a
    s.p_hat.emplace_back(-dopen[0][r], -dopen[1][r], -dopen[2][r]);
    s.s_tilde.push_back(-opening[r]);
  }
  return s;
}

FrozenResponse solve_frozen_contact(const CellContext& ctx, const SymTensor2& strain, std::span<const int> active) {
  check_records(ctx, active);
  const int m = static_cast<int>(active.size());
  const auto& space = ctx.space();
  const Eigen::VectorXd lift = ctx.lift(strain);
  const Eigen::VectorXd v = ctx.factorization().solve(Eigen::VectorXd(stress_load(ctx.full_stiffness(), space, lift)));
  const Eigen::VectorXd h = ctx.gap().ref_offset + ctx.gap().full * lift + ctx.gap().reduced * v;
  FrozenResponse out;
  out.multipliers = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd q = v;
  if (m > 0) {
    Eigen::VectorXd rhs(m);
    for (int k = 0; k < m; ++k) rhs[k] = -h[active[k]];
    out.multipliers = decompose(active_block(ctx, active)).solve(rhs);
    for (int k = 0; k < m; ++k) q += out.multipliers[k] * ctx.a_inv_gt().col(active[k]);
  }
  out.u_mic_full = lift + space.expand(q);
  out.opening = ctx.gap().opening(out.u_mic_full);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(ctx.num_records());
  for (int k = 0; k < m; ++k) lambda[active[k]] = out.multipliers[k];
  out.sigma = ctx.effective_stress(out.u_mic_full, lambda);
  return out;
}

TangentCheck effective_stress_tangent_check(const CellContext& ctx, const SymTensor2& strain,
                                            std::span<const int> active, const Eigen::Matrix3d& dh, double delta) {
  TangentCheck out;
  std::vector<char> closed(ctx.num_records(), 0);
  for (int r : active) closed[r] = 1;
  const double scale = std::max(dh.norm(), 1e-300);
  for (int k = 0; k < 3; ++k) {
    const SymTensor2 step = strain_from_voigt(delta * Eigen::Vector3d::Unit(k));
    const auto plus = solve_frozen_contact(ctx, strain + step, active);
    const auto minus = solve_frozen_contact(ctx, strain - step, active);
    for (const auto* f : {&plus, &minus}) {
      if ((f->multipliers.array() < -1e-12).any()) out.conclusive = false;
      for (int r = 0; r < ctx.num_records(); ++r) {
        if (!closed[r] && f->opening[r] < -1e-12) out.conclusive = false;
      }
    }
    const Eigen::Vector3d fd = (stress_to_voigt(plus.sigma) - stress_to_voigt(minus.sigma)) / (2.0 * delta);
    out.rel_error[k] = (fd - dh.col(k)).norm() / scale;
    out.max_rel_error = std::max(out.max_rel_error, out.rel_error[k]);
  }
  return out;
}

}  // namespace microcontact

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

#include "microcontact/errors.hpp"
#include "microcontact/micro/complementarity.hpp"
#include "microcontact/micro/local_contact.hpp"

namespace microcontact {

MicroState MicroState::virgin(const CellContext& ctx) {
  MicroState s;
  s.fluctuation = Eigen::VectorXd::Zero(ctx.space().num_reduced());
  s.u_mic_full = Eigen::VectorXd::Zero(ctx.space().num_full());
  s.lambda = Eigen::VectorXd::Zero(ctx.num_records());
  s.gap = -ctx.gap().ref_offset;
  s.active = extract_active_set(s.lambda, s.gap, 1e-10, 1e-10);
  return s;
}

std::vector<int> extract_active_set(const Eigen::VectorXd& lambda, const Eigen::VectorXd& gap, double eps_lambda,
                                    double eps_gap) {
  if (lambda.size() != gap.size()) throw ContractError("multiplier and gap sizes differ");
  std::vector<int> out;
  for (int i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > eps_lambda || std::abs(gap[i]) <= eps_gap) out.push_back(i);
  }
  return out;
}

const MicroState& solve_local_contact(MicroState& state, const SymTensor2& strain, const CellContext& ctx,
                                      const MicroOptions& opts) {
  if (state.fluctuation.size() != ctx.space().num_reduced()) throw ContractError("micro state does not match the cell");
  const auto& space = ctx.space();
  const Eigen::VectorXd u_prev = ctx.lift(strain) + space.expand(state.fluctuation);
  const Eigen::VectorXd rhs = stress_load(ctx.full_stiffness(), space, u_prev);
  Eigen::VectorXd h = compute_h(ctx.factorization(), ctx.gap(), rhs, u_prev);
  if (opts.flip_h_sign) h = -h;

  const CpResult cp = semismooth_newton_cp(ctx.schur(), h, {opts.tol, opts.max_iter});
  const Eigen::VectorXd dq = ctx.factorization().solve(rhs) + ctx.a_inv_gt() * cp.lambda;

  state.strain = strain;
  state.fluctuation += dq;
  state.u_mic_full = u_prev + space.expand(dq);
  state.lambda = cp.lambda;
  state.gap = -ctx.gap().opening(state.u_mic_full);
  state.active = extract_active_set(state.lambda, state.gap, opts.eps_lambda, opts.eps_gap);
  state.sigma_mic = average_stress(ctx.mesh(), ctx.material(), state.u_mic_full);
  state.sigma = ctx.effective_stress(state.u_mic_full, state.lambda);
  state.report = {cp.iterations, cp.residual, static_cast<int>(state.active.size()), cp.regularized, cp.history};
  state.tangent.reset();
  state.sensitivity.reset();
  return state;
}

}  // namespace microcontact

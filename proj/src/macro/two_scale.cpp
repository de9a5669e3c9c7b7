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
#include <exception>
#include <string>

#include "microcontact/errors.hpp"
#include "microcontact/macro/parallel.hpp"
#include "microcontact/macro/two_scale.hpp"

namespace microcontact {

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

[[noreturn]] void rethrow_annotated(const std::string& where) {
  try {
    throw;
  } catch (const CyclingError& e) {
    throw CyclingError(where + e.what(), e.history());
  } catch (const StepSizeError& e) {
    throw StepSizeError(where + e.what(), e.history());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(where + e.what(), e.history());
  } catch (const FactorizationError& e) {
    throw FactorizationError(where + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(where + e.what());
  } catch (const ContractError& e) {
    throw ContractError(where + e.what());
  } catch (const Error& e) {
    throw Error(where + e.what());
  }
}

void solve_points(MacroState& state, const MacroModel& model, const CellContext& cell, const TwoScaleOptions& opts) {
  const auto strains = model.strains(state.u0);
  parallel_for(model.num_points(), opts.threads, [&](int q) {
    try {
      solve_local_contact(state.micro[q], strains[q], cell, opts.micro);
    } catch (const Error&) {
      rethrow_annotated("quadrature point " + std::to_string(q) + ": ");
    }
  });
}

bool stagnated(const std::vector<double>& r, int window) {
  const int n = static_cast<int>(r.size());
  if (window < 1 || n <= window) return false;
  const double before = *std::min_element(r.begin(), r.end() - window);
  const double recent = *std::min_element(r.end() - window, r.end());
  return recent > 0.5 * before;
}

}  // namespace

std::string_view method_name(MacroMethod m) {
  switch (m) {
    case MacroMethod::ml:
      return "ml";
    case MacroMethod::mc_uzawa:
      return "mc-uzawa";
    case MacroMethod::mc_newton:
      return "mc-newton";
  }
  return "ml";
}

MacroMethod parse_method(std::string_view name) {
  for (auto m : {MacroMethod::ml, MacroMethod::mc_uzawa, MacroMethod::mc_newton}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (expected ml, mc-uzawa or mc-newton)");
}

std::vector<SymTensor2> MacroState::stresses() const {
  std::vector<SymTensor2> out;
  out.reserve(micro.size());
  for (const auto& m : micro) out.push_back(m.sigma);
  return out;
}

int MacroState::active_total() const {
  int n = 0;
  for (const auto& m : micro) n += static_cast<int>(m.active.size());
  return n;
}

TwoScaleResult two_scale_solve(const MacroModel& model, const CellContext& cell, const TwoScaleOptions& opts,
                               const IterationObserver& observer) {
  if (opts.load_steps < 1 || opts.max_outer < 1) throw ConfigError("load_steps and max_outer must be positive");
  if (!(opts.tol_outer > 0.0) || !(opts.plateau_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (opts.gamma < kFullGamma) throw ConfigError("gamma must be a hop count or the full sentinel");

  TwoScaleResult res;
  MacroState& state = res.state;
  const auto& dofs = model.dofs();
  state.u0 = Eigen::VectorXd::Zero(dofs.num_full());
  state.micro.assign(model.num_points(), MicroState::virgin(cell));
  const Eigen::VectorXd f_unit = model.external_load();
  const bool contact = opts.method != MacroMethod::ml;

  for (int step = 1; step <= opts.load_steps; ++step) {
    state.load_factor = static_cast<double>(step) / opts.load_steps;
    const Eigen::VectorXd f = state.load_factor * f_unit;
    // Prescribed values not yet in u0; applied through the first increment.
    Eigen::VectorXd pending = state.load_factor * dofs.prescribed() - state.u0;
    for (int i = 0; i < dofs.num_full(); ++i) {
      if (dofs.index(i / 2, i % 2) >= 0) pending[i] = 0.0;
    }
    std::vector<double> residuals;
    bool done = false;
    for (int outer = 1; outer <= opts.max_outer && !done; ++outer) {
      const std::string where =
          "load step " + std::to_string(step) + ", outer iteration " + std::to_string(outer) + ": ";
      IterationRecord rec;
      rec.step = step;
      rec.outer_iter = outer;
      rec.method = opts.method;
      try {
        solve_points(state, model, cell, opts);
        const auto sigma = state.stresses();
        const Eigen::VectorXd r = out_of_balance(model, f, sigma);
        const double scale = std::max(inf_norm(f), inf_norm(model.internal_force_full(sigma)));
        rec.norm_r = inf_norm(r);
        rec.n_active_total = state.active_total();
        residuals.push_back(rec.norm_r);
        const bool settled = pending.isZero(0.0);
        if (settled && rec.norm_r <= opts.tol_outer * scale) {
          done = true;
        } else if (settled && rec.norm_r <= opts.plateau_tol * scale &&
                   (stagnated(residuals, opts.plateau_window) || outer == opts.max_outer)) {
          done = true;
          res.plateau = true;
        }
        if (!done) {
          std::vector<Eigen::Matrix3d> dh(model.num_points());
          Eigen::VectorXd du;
          if (contact) {
            state.sigma_gamma = build_sigma_gamma(state.micro, cell, opts.gamma, opts.threads);
            for (int q = 0; q < model.num_points(); ++q) dh[q] = state.micro[q].tangent->dh;
            auto sys = assemble_contact_system(model, assemble_macro_tangent(model, dh),
                                               r - dofs.restrict(model.tangent_force_full(dh, pending)),
                                               state.sigma_gamma);
            const Eigen::VectorXd ed = model.full_strain_operator() * pending;
            for (int e = 0; e < sys.num_entries(); ++e) {
              const auto& entry = state.sigma_gamma.entries[e];
              sys.s[e] += ddot(entry.p_hat, strain_from_voigt(ed.segment<3>(3 * entry.point)));
            }
            const auto inc = opts.method == MacroMethod::mc_uzawa ? mc_uzawa_solve(sys, opts.uzawa)
                                                                  : mc_nonsmooth_solve(sys, opts.newton);
            if (inc.lambda.size() && inc.lambda.minCoeff() < 0.0) {
              throw ContractError("macro multipliers became negative");
            }
            du = inc.du;
            state.lambda_macro = inc.lambda;
            rec.inner_iterations = inc.iterations;
          } else {
            parallel_for(model.num_points(), opts.threads,
                         [&](int q) { linearize_bilateral(state.micro[q], cell); });
            for (int q = 0; q < model.num_points(); ++q) dh[q] = state.micro[q].tangent->dh;
            du = ml_increment(assemble_macro_tangent(model, dh), r - dofs.restrict(model.tangent_force_full(dh, pending)));
            rec.inner_iterations = 1;
          }
          const Eigen::VectorXd du_full = dofs.expand_increment(du) + pending;
          state.u0 += du_full;
          for (int i = 0; i < dofs.num_full(); ++i) {
            if (dofs.index(i / 2, i % 2) < 0) state.u0[i] = state.load_factor * dofs.prescribed()[i];
          }
          pending.setZero();
          rec.norm_du = inf_norm(du_full);
          rec.norm_lambda = inf_norm(state.lambda_macro);
        } else {
          rec.norm_lambda = 0.0;
        }
      } catch (const Error&) {
        rethrow_annotated(where);
      }
      res.history.push_back(rec);
      if (observer) observer(rec);
    }
    if (!done) {
      throw ConvergenceError("load step " + std::to_string(step) + ": outer loop did not converge in " +
                                 std::to_string(opts.max_outer) + " iterations",
                             residuals);
    }
    res.final_residual = residuals.back();
    res.steps.push_back(state);
  }
  return res;
}

}  // namespace microcontact

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

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "microcontact/macro/contact_set.hpp"
#include "microcontact/macro/methods.hpp"
#include "microcontact/macro/model.hpp"
#include "microcontact/micro/cell_context.hpp"
#include "microcontact/micro/local_contact.hpp"

namespace microcontact {

enum class MacroMethod { ml, mc_uzawa, mc_newton };

std::string_view method_name(MacroMethod m);
// Throws ConfigError for unknown names.
MacroMethod parse_method(std::string_view name);

struct TwoScaleOptions {
  MacroMethod method = MacroMethod::ml;
  int gamma = 1;  // kFullGamma for every open record
  int load_steps = 1;
  double tol_outer = 1e-12;  // on |r|_inf relative to max(|f|_inf, |f_int|_inf)
  double plateau_tol = 1e-8;
  int plateau_window = 3;
  int max_outer = 40;
  MicroOptions micro;
  MacroUzawaOptions uzawa;
  MacroNewtonOptions newton;
  int threads = 1;
};

struct MacroState {
  Eigen::VectorXd u0;  // all nodal DOFs
  std::vector<MicroState> micro;
  Eigen::VectorXd lambda_macro;
  SigmaGammaSet sigma_gamma;
  double load_factor = 0.0;

  std::vector<SymTensor2> stresses() const;
  int active_total() const;
};

struct IterationRecord {
  int step = 0;
  int outer_iter = 0;
  MacroMethod method = MacroMethod::ml;
  double norm_du = 0.0;
  double norm_r = 0.0;
  double norm_lambda = 0.0;
  int n_active_total = 0;
  int inner_iterations = 0;
};

struct TwoScaleResult {
  MacroState state;
  std::vector<IterationRecord> history;
  bool plateau = false;  // stopped on stagnation above tol_outer
  double final_residual = 0.0;
  std::vector<MacroState> steps;  // converged state after each load step
};

using IterationObserver = std::function<void(const IterationRecord&)>;

// Alternates local contact solves at every quadrature point with the chosen
// macro increment until the out-of-balance force vanishes. Stagnation of
// the residual below plateau_tol (same scale as tol_outer) over
// plateau_window iterations ends the step as a plateau. Errors are rethrown
// with the load step and outer iteration prepended.
TwoScaleResult two_scale_solve(const MacroModel& model, const CellContext& cell, const TwoScaleOptions& opts,
                               const IterationObserver& observer = {});

}  // namespace microcontact

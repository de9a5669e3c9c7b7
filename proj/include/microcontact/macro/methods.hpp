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

#include <vector>

#include <Eigen/Dense>

#include "microcontact/macro/contact_set.hpp"
#include "microcontact/macro/model.hpp"

namespace microcontact {

// Linearized macro contact problem for one increment du on the free DOFs:
//   K du + Q^T W lambda = r,  0 >= Q du + s  _|_  lambda >= 0.
// Row e of Q evaluates P_e : e(du) at the point of entry e and W holds the
// quadrature weight of that point.
struct MacroContactSystem {
  MacroMatrix k;
  Eigen::VectorXd r;
  Eigen::MatrixXd q;
  Eigen::VectorXd weight;
  Eigen::VectorXd s;

  int num_entries() const { return static_cast<int>(s.size()); }
};

MacroContactSystem assemble_contact_system(const MacroModel& model, const MacroMatrix& k, const Eigen::VectorXd& r,
                                           const SigmaGammaSet& set);

// Complementarity residual max_e |max(-lambda_e, P_e:e(du) + s_e)|.
double macro_complementarity_residual(const MacroContactSystem& sys, const Eigen::VectorXd& du,
                                      const Eigen::VectorXd& lambda);

struct IncrementResult {
  Eigen::VectorXd du;
  Eigen::VectorXd lambda;
  int iterations = 0;
  std::vector<double> history;
  double beta = 0.0;
};

// Solves K du = r. Throws FactorizationError if K is singular.
Eigen::VectorXd ml_increment(const MacroMatrix& k, const Eigen::VectorXd& r);

struct MacroUzawaOptions {
  double beta0 = 0.0;  // <= 0: 1 / lambda_max(Q K^-1 Q^T W)
  double tol = 1e-10;
  int max_iter = 20000;
};

// Projected multiplier iteration starting from lambda = 0. Stops when the
// multiplier update is below tol in the max norm.
IncrementResult mc_uzawa_solve(const MacroContactSystem& sys, const MacroUzawaOptions& opts = {});

struct MacroNewtonOptions {
  double tol = 1e-12;  // relative to max(|r|, |s|)
  int max_iter = 50;
};

// Semismooth Newton on the coupled system; singular steps use the
// minimum-norm multiplier.
IncrementResult mc_nonsmooth_solve(const MacroContactSystem& sys, const MacroNewtonOptions& opts = {});

// Largest eigenvalue of Q K^-1 Q^T W.
double macro_dual_norm(const MacroContactSystem& sys);

}  // namespace microcontact

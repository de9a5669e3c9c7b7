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

#include "microcontact/micro/gap_operator.hpp"

namespace microcontact {

// Linear complementarity problem  0 <= lambda  _|_  C lambda + h >= 0.
struct CpResult {
  Eigen::VectorXd lambda;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  bool regularized = false;
};

// max_i |min(C lambda + h, lambda)_i|
double cp_residual(const DenseRowMatrix& c, const Eigen::VectorXd& h, const Eigen::VectorXd& lambda);

struct NewtonCpOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

// Semismooth Newton on min(C lambda + h, lambda) = 0 (primal-dual active set).
// Throws CyclingError when an active set repeats, ConvergenceError after
// max_iter.
CpResult semismooth_newton_cp(const DenseRowMatrix& c, const Eigen::VectorXd& h, const NewtonCpOptions& opts = {});

struct UzawaCpOptions {
  double beta = 0.0;  // <= 0: 1 / ||C||_2
  double tol = 1e-10;
  int max_iter = 200000;
  int divergence_window = 10;
};

// Projected iteration lambda <- max(0, lambda - beta (C lambda + h)).
// Throws StepSizeError when the residual has not decreased over the last
// divergence_window steps.
CpResult uzawa_cp(const DenseRowMatrix& c, const Eigen::VectorXd& h, const UzawaCpOptions& opts = {});

// Largest eigenvalue of a symmetric positive semidefinite matrix by power iteration.
double spectral_norm_estimate(const DenseRowMatrix& c, int iterations = 500, double rel_tol = 1e-12);

}  // namespace microcontact

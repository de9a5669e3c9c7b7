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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "microcontact/homog/types.hpp"
#include "microcontact/micro/cell_context.hpp"
#include "microcontact/tensor.hpp"

namespace microcontact {

struct MicroOptions {
  double tol = 1e-10;
  int max_iter = 50;
  double eps_lambda = 1e-10;
  double eps_gap = 1e-10;
  bool flip_h_sign = false;  // fault injection for the property suites
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  int active_size = 0;
  bool regularized = false;
  std::vector<double> history;
};

// Converged micro response at one macro quadrature point.
struct MicroState {
  SymTensor2 strain;
  Eigen::VectorXd fluctuation;  // reduced DOFs
  Eigen::VectorXd u_mic_full;   // lift + T fluctuation
  Eigen::VectorXd lambda;
  Eigen::VectorXd gap;  // -(opening), <= 0 when admissible
  std::vector<int> active;
  SymTensor2 sigma_mic;  // solid average of the micro stress
  SymTensor2 sigma;      // macro stress, energy conjugate of the strain
  SolveReport report;
  std::optional<HomogenizedTangent> tangent;
  std::optional<ContactSensitivity> sensitivity;

  static MicroState virgin(const CellContext& ctx);
};

// Records with lambda > eps_lambda or |gap| <= eps_gap.
std::vector<int> extract_active_set(const Eigen::VectorXd& lambda, const Eigen::VectorXd& gap, double eps_lambda,
                                    double eps_gap);

// Solves the cell contact problem for macro strain E starting from `state`
// and overwrites it with the result. Cached tangent data is cleared.
const MicroState& solve_local_contact(MicroState& state, const SymTensor2& strain, const CellContext& ctx,
                                      const MicroOptions& opts = {});

}  // namespace microcontact

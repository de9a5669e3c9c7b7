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
#include <limits>
#include <set>
#include <string>

#include <Eigen/SparseCholesky>

#include "microcontact/errors.hpp"
#include "microcontact/macro/methods.hpp"

namespace microcontact {

namespace {

class MacroSolver {
 public:
  explicit MacroSolver(const MacroMatrix& k) {
    if (k.rows() != k.cols()) throw ContractError("macro tangent is not square");
    ldlt_.compute(k);
    if (ldlt_.info() != Eigen::Success) throw FactorizationError("macro tangent factorization failed");
    const Eigen::VectorXd d = ldlt_.vectorD();
    if (d.size() > 0 && !(d.minCoeff() > 1e-14 * d.cwiseAbs().maxCoeff())) {
      throw FactorizationError("macro tangent is singular or indefinite");
    }
  }

  template <typename T>
  Eigen::MatrixXd solve(const T& b) const {
    return ldlt_.solve(Eigen::MatrixXd(b));
  }

 private:
  Eigen::SimplicialLDLT<MacroMatrix> ldlt_;
};

Eigen::VectorXd constraint_values(const MacroContactSystem& sys, const Eigen::VectorXd& du) {
  return sys.q * du + sys.s;
}

double weighted_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  return std::sqrt((v.array().square() * w.array()).sum());
}

}  // namespace

MacroContactSystem assemble_contact_system(const MacroModel& model, const MacroMatrix& k, const Eigen::VectorXd& r,
                                           const SigmaGammaSet& set) {
  MacroContactSystem sys;
  sys.k = k;
  sys.r = r;
  const int m = set.size();
  const int n = model.dofs().num_free();
  if (k.rows() != n || r.size() != n) throw ContractError("macro system sizes differ");
  sys.q = Eigen::MatrixXd::Zero(m, n);
  sys.weight.resize(m);
  sys.s.resize(m);
  const auto& b = model.strain_operator();
  for (int e = 0; e < m; ++e) {
    const auto& entry = set.entries[e];
    if (entry.point < 0 || entry.point >= model.num_points()) throw ContractError("contact entry point out of range");
    // P : e with e in Voigt form and engineering shear.
    const Eigen::RowVector3d p(entry.p_hat.xx, entry.p_hat.yy, entry.p_hat.xy);
    sys.q.row(e) = p * Eigen::MatrixXd(b.middleRows(3 * entry.point, 3));
    sys.weight[e] = model.quadrature()[entry.point].weight;
    sys.s[e] = entry.s_tilde;
  }
  return sys;
}

double macro_complementarity_residual(const MacroContactSystem& sys, const Eigen::VectorXd& du,
                                      const Eigen::VectorXd& lambda) {
  if (sys.num_entries() == 0) return 0.0;
  const Eigen::VectorXd g = constraint_values(sys, du);
  return (-lambda).cwiseMax(g).cwiseAbs().maxCoeff();
}

Eigen::VectorXd ml_increment(const MacroMatrix& k, const Eigen::VectorXd& r) {
  if (r.size() != k.rows()) throw ContractError("load vector has the wrong size");
  return MacroSolver(k).solve(r);
}

double macro_dual_norm(const MacroContactSystem& sys) {
  if (sys.num_entries() == 0) return 0.0;
  const MacroSolver solver(sys.k);
  const Eigen::MatrixXd z = solver.solve(sys.q.transpose());
  const Eigen::VectorXd sw = sys.weight.cwiseSqrt();
  const Eigen::MatrixXd m = sw.asDiagonal() * (sys.q * z) * sw.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

IncrementResult mc_uzawa_solve(const MacroContactSystem& sys, const MacroUzawaOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw ContractError("invalid Uzawa options");
  const int m = sys.num_entries();
  const MacroSolver solver(sys.k);
  IncrementResult res;
  res.lambda = Eigen::VectorXd::Zero(m);
  const Eigen::VectorXd u_free = solver.solve(sys.r);
  if (m == 0) {
    res.du = u_free;
    res.iterations = 1;
    res.history.push_back(0.0);
    return res;
  }
  // du(lambda) = u_free - Z W lambda
  const Eigen::MatrixXd zw = solver.solve(sys.q.transpose()) * sys.weight.asDiagonal();
  double beta = opts.beta0;
  if (!(beta > 0.0)) {
    const double norm = macro_dual_norm(sys);
    beta = norm > 0.0 ? 1.0 / norm : 1.0;
  }
  double prev_change = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= opts.max_iter; ++k) {
    res.du = u_free - zw * res.lambda;
    const Eigen::VectorXd g = constraint_values(sys, res.du);
    const Eigen::VectorXd next = (res.lambda + beta * g).cwiseMax(0.0);
    const Eigen::VectorXd step = next - res.lambda;
    const double change = step.cwiseAbs().maxCoeff();
    const double wchange = weighted_norm(step, sys.weight);
    res.lambda = next;
    res.iterations = k;
    res.history.push_back(change);
    if (change <= opts.tol) {
      res.du = u_free - zw * res.lambda;
      res.beta = beta;
      return res;
    }
    if (wchange > prev_change) beta *= 0.5;
    prev_change = wchange;
  }
  throw ConvergenceError("macro Uzawa iteration did not converge in " + std::to_string(opts.max_iter) + " steps",
                         res.history);
}

IncrementResult mc_nonsmooth_solve(const MacroContactSystem& sys, const MacroNewtonOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw ContractError("invalid Newton options");
  const int m = sys.num_entries();
  const MacroSolver solver(sys.k);
  IncrementResult res;
  const Eigen::VectorXd u_free = solver.solve(sys.r);
  res.du = u_free;
  res.lambda = Eigen::VectorXd::Zero(m);
  if (m == 0) {
    res.iterations = 1;
    res.history.push_back(0.0);
    return res;
  }
  const Eigen::MatrixXd zw = solver.solve(sys.q.transpose()) * sys.weight.asDiagonal();
  const Eigen::MatrixXd schur = sys.q * zw;
  const Eigen::VectorXd rhs = sys.q * u_free + sys.s;
  const double scale = std::max({sys.r.cwiseAbs().maxCoeff(), sys.s.cwiseAbs().maxCoeff(), 0.0});
  std::set<std::vector<int>> seen;
  for (int k = 1; k <= opts.max_iter; ++k) {
    const Eigen::VectorXd g = constraint_values(sys, res.du);
    const double residual = (-res.lambda).cwiseMax(g).cwiseAbs().maxCoeff();
    res.history.push_back(residual);
    res.iterations = k;
    if (residual <= opts.tol * scale) {
      res.lambda = res.lambda.cwiseMax(0.0);
      return res;
    }
    std::vector<int> act;
    for (int e = 0; e < m; ++e) {
      if (g[e] >= -res.lambda[e]) act.push_back(e);
    }
    if (!seen.insert(act).second) {
      throw CyclingError("macro semismooth Newton revisited an active set", res.history);
    }
    const int a = static_cast<int>(act.size());
    Eigen::MatrixXd saa(a, a);
    Eigen::VectorXd ba(a);
    for (int i = 0; i < a; ++i) {
      ba[i] = rhs[act[i]];
      for (int j = 0; j < a; ++j) saa(i, j) = schur(act[i], act[j]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(saa);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd la = a > 0 ? Eigen::VectorXd(cod.solve(ba)) : Eigen::VectorXd();
    res.lambda.setZero();
    for (int i = 0; i < a; ++i) res.lambda[act[i]] = la[i];
    res.du = u_free - zw * res.lambda;
  }
  throw ConvergenceError("macro semismooth Newton did not converge in " + std::to_string(opts.max_iter) + " steps",
                         res.history);
}

}  // namespace microcontact

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
#include <set>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/micro/complementarity.hpp"
#include "microcontact/simd/kernels.hpp"

namespace microcontact {

namespace {

void check_shape(const DenseRowMatrix& c, const Eigen::VectorXd& h) {
  if (c.rows() != c.cols() || c.rows() != h.size()) throw ContractError("complementarity problem has mismatched sizes");
}

// w = C lambda + h
void affine_map(const DenseRowMatrix& c, const Eigen::VectorXd& lambda, const Eigen::VectorXd& h, Eigen::VectorXd& w) {
  const auto n = static_cast<std::size_t>(h.size());
  w.resize(h.size());
  simd::kernels().gemv(c.data(), n, n, n, lambda.data(), h.data(), w.data());
}

}  // namespace

double cp_residual(const DenseRowMatrix& c, const Eigen::VectorXd& h, const Eigen::VectorXd& lambda) {
  check_shape(c, h);
  Eigen::VectorXd w;
  affine_map(c, lambda, h, w);
  return simd::kernels().min_residual_inf(w.data(), lambda.data(), static_cast<std::size_t>(w.size()));
}

CpResult semismooth_newton_cp(const DenseRowMatrix& c, const Eigen::VectorXd& h, const NewtonCpOptions& opts) {
  check_shape(c, h);
  const int n = static_cast<int>(h.size());
  const auto& k = simd::kernels();
  CpResult res;
  res.lambda = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w;
  std::set<std::vector<bool>> seen;
  const double eps = n > 0 ? 1e-12 * c.trace() / n : 0.0;

  for (int it = 0;; ++it) {
    affine_map(c, res.lambda, h, w);
    res.residual = k.min_residual_inf(w.data(), res.lambda.data(), static_cast<std::size_t>(n));
    res.history.push_back(res.residual);
    res.iterations = it;
    if (res.residual <= opts.tol) return res;
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "semismooth Newton did not converge in " << opts.max_iter << " iterations (residual " << res.residual << ")";
      throw ConvergenceError(os.str(), res.history);
    }

    std::vector<bool> active(n);
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      active[i] = w[i] <= res.lambda[i];
      if (active[i]) idx.push_back(i);
    }
    if (!seen.insert(active).second) {
      throw CyclingError("semismooth Newton revisited an active set", res.history);
    }

    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXd caa(m, m);
    Eigen::VectorXd rhs(m);
    for (int a = 0; a < m; ++a) {
      rhs[a] = -h[idx[a]];
      for (int b = 0; b < m; ++b) caa(a, b) = c(idx[a], idx[b]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(caa);
    if (llt.info() != Eigen::Success) {
      caa.diagonal().array() += eps;
      llt.compute(caa);
      res.regularized = true;
      if (llt.info() != Eigen::Success) {
        throw ConvergenceError("active block of the Schur complement is not positive definite", res.history);
      }
    }
    const Eigen::VectorXd la = m ? Eigen::VectorXd(llt.solve(rhs)) : Eigen::VectorXd();
    res.lambda.setZero();
    for (int a = 0; a < m; ++a) res.lambda[idx[a]] = la[a];
  }
}

double spectral_norm_estimate(const DenseRowMatrix& c, int iterations, double rel_tol) {
  const int n = static_cast<int>(c.rows());
  if (n == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd w(n);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    affine_map(c, v, zero, w);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - est) <= rel_tol * next) return next;
    est = next;
  }
  return est;
}

CpResult uzawa_cp(const DenseRowMatrix& c, const Eigen::VectorXd& h, const UzawaCpOptions& opts) {
  check_shape(c, h);
  const int n = static_cast<int>(h.size());
  const auto& k = simd::kernels();
  const double beta = opts.beta > 0.0 ? opts.beta : 1.0 / std::max(spectral_norm_estimate(c), 1e-300);
  CpResult res;
  res.lambda = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w, step(n);
  for (int it = 0;; ++it) {
    affine_map(c, res.lambda, h, w);
    res.residual = k.min_residual_inf(w.data(), res.lambda.data(), static_cast<std::size_t>(n));
    res.history.push_back(res.residual);
    res.iterations = it;
    if (res.residual <= opts.tol) return res;
    const int window = opts.divergence_window;
    if (it >= window && res.residual >= res.history[it - window]) {
      std::ostringstream os;
      os << "projected iteration makes no progress over " << window << " steps with beta " << beta;
      throw StepSizeError(os.str(), res.history);
    }
    if (it >= opts.max_iter) throw ConvergenceError("projected iteration did not converge", res.history);
    step = -w;
    k.project_nonneg_step(res.lambda.data(), step.data(), beta, static_cast<std::size_t>(n));
  }
}

}  // namespace microcontact

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

#include <Eigen/SparseCholesky>

#include "microcontact/errors.hpp"
#include "microcontact/fem/factorization.hpp"

namespace microcontact {

// Translations span ker A. One node is pinned to make the matrix definite;
// the pinned solution is then shifted back onto the zero-mean subspace.
struct Factorization::Impl {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  std::vector<int> keep;  // reduced index -> pinned-system index, -1 if pinned
  int dim = 0;
  int pinned = 0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> translation;
  MeanOperator mean;
};

Factorization::Factorization(const SparseMatrix& a, const CellSpace& space) {
  auto impl = std::make_shared<Impl>();
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n != space.num_reduced()) throw FactorizationError("matrix does not match the cell space");
  impl->dim = n;
  impl->mean = space.mean_operator();

  impl->translation = Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(n, 2);
  int pin = -1;
  for (int i = 0; i < space.num_full() / 2; ++i) {
    const int cx = space.column(i, 0);
    if (cx < 0) continue;
    impl->translation(cx, 0) = 1.0;
    impl->translation(space.column(i, 1), 1) = 1.0;
    if (pin < 0) pin = cx;
  }
  if (space.has_rigid_body()) {
    impl->translation(space.rigid_offset(), 0) = 1.0;
    impl->translation(space.rigid_offset() + 1, 1) = 1.0;
    if (pin < 0) pin = space.rigid_offset();
  }
  if (pin < 0) throw FactorizationError("cell space has no translational DOFs");

  impl->keep.assign(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pin || i == pin + 1) continue;
    impl->keep[i] = m++;
  }
  impl->pinned = m;
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      const int r = impl->keep[it.row()], c = impl->keep[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix ap(m, m);
  ap.setFromTriplets(trip.begin(), trip.end());
  impl->ldlt.compute(ap);
  if (impl->ldlt.info() != Eigen::Success) throw FactorizationError("LDL^T factorization failed");
  const Eigen::VectorXd d = impl->ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (d.minCoeff() <= 1e-14 * dmax) {
    throw FactorizationError("cell stiffness is singular beyond translations (floating part?)");
  }
  impl_ = std::move(impl);
}

int Factorization::dimension() const { return impl_->dim; }

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const {
  const Impl& f = *impl_;
  const Eigen::Vector2d mu = f.translation.transpose() * rhs;
  const Eigen::VectorXd b = rhs - f.mean.transpose() * mu;
  Eigen::VectorXd bp(f.pinned);
  for (int i = 0; i < f.dim; ++i) {
    if (f.keep[i] >= 0) bp[f.keep[i]] = b[i];
  }
  const Eigen::VectorXd xp = f.ldlt.solve(bp);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(f.dim);
  for (int i = 0; i < f.dim; ++i) {
    if (f.keep[i] >= 0) x[i] = xp[f.keep[i]];
  }
  x -= f.translation * (f.mean * x);
  return x;
}

Eigen::MatrixXd Factorization::solve(const Eigen::MatrixXd& rhs) const {
  Eigen::MatrixXd out(rhs.rows(), rhs.cols());
  for (int j = 0; j < rhs.cols(); ++j) out.col(j) = solve(Eigen::VectorXd(rhs.col(j)));
  return out;
}

}  // namespace microcontact

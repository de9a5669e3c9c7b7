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
#include <set>
#include <sstream>

#include "microcontact/errors.hpp"
#include "microcontact/fem/cell_space.hpp"

namespace microcontact {

CellSpace::CellSpace(const PeriodicCellMesh& mesh) {
  const int n = mesh.num_nodes();
  num_full_ = 2 * n;
  std::vector<int> master(n);
  for (int i = 0; i < n; ++i) master[i] = i;
  for (const auto& p : mesh.periodic_pairs) master[p.slave] = p.master;
  for (int i = 0; i < n; ++i) {
    int m = master[i], hops = 0;
    while (master[m] != m) {
      m = master[m];
      if (++hops > n) throw AssemblyError("periodic pairs form a cycle");
    }
    master[i] = m;
  }
  std::vector<char> rigid(n, 0);
  for (int r : mesh.rigid_nodes) rigid[r] = 1;
  for (int i = 0; i < n; ++i) {
    if (rigid[i] && master[i] != i) throw AssemblyError("rigid node " + std::to_string(i) + " is periodic");
    if (master[i] != i && rigid[master[i]]) throw AssemblyError("rigid node " + std::to_string(master[i]) + " is periodic");
  }

  column_.assign(2 * n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (!rigid[i] && master[i] == i) {
      column_[2 * i] = next++;
      column_[2 * i + 1] = next++;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!rigid[i] && master[i] != i) {
      column_[2 * i] = column_[2 * master[i]];
      column_[2 * i + 1] = column_[2 * master[i] + 1];
    }
  }
  if (!mesh.rigid_nodes.empty()) {
    rigid_offset_ = next;
    next += 3;
    for (int r : mesh.rigid_nodes) rigid_center_ += mesh.nodes[r];
    rigid_center_ /= static_cast<double>(mesh.rigid_nodes.size());
  }
  num_reduced_ = next;

  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    if (rigid[i]) {
      const Point d = mesh.nodes[i] - rigid_center_;
      trip.emplace_back(2 * i, rigid_offset_, 1.0);
      trip.emplace_back(2 * i + 1, rigid_offset_ + 1, 1.0);
      trip.emplace_back(2 * i, rigid_offset_ + 2, -d.y());
      trip.emplace_back(2 * i + 1, rigid_offset_ + 2, d.x());
    } else {
      trip.emplace_back(2 * i, column_[2 * i], 1.0);
      trip.emplace_back(2 * i + 1, column_[2 * i + 1], 1.0);
    }
  }
  expansion_.resize(num_full_, num_reduced_);
  expansion_.setFromTriplets(trip.begin(), trip.end());

  weights_ = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double a = mesh.signed_area(t) / 3.0;
    for (int v : mesh.triangles[t]) weights_[v] += a;
  }
  const double total = weights_.sum();
  if (!(total > 0.0)) throw AssemblyError("cell has no solid area");
  weights_ /= total;
  Eigen::Matrix<double, 2, Eigen::Dynamic> w_full = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, num_full_);
  for (int i = 0; i < n; ++i) {
    w_full(0, 2 * i) = weights_[i];
    w_full(1, 2 * i + 1) = weights_[i];
  }
  mean_ = w_full * expansion_;
}

Eigen::Vector2d CellSpace::mean_full(const Eigen::VectorXd& full) const {
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  for (int i = 0; i < weights_.size(); ++i) {
    m.x() += weights_[i] * full[2 * i];
    m.y() += weights_[i] * full[2 * i + 1];
  }
  return m;
}

}  // namespace microcontact

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
#include <map>
#include <numeric>

#include "microcontact/errors.hpp"
#include "microcontact/macro/model.hpp"

namespace microcontact {

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void check_component(int c) {
  if (c != 0 && c != 1) throw ConfigError("displacement component must be 0 or 1");
}

}  // namespace

DofMap::DofMap(const MacroMesh& mesh, const MacroBoundary& bc) {
  const int n = 2 * mesh.num_nodes();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& t : bc.tied) {
    check_component(t.component);
    const auto& nodes = mesh.side_nodes[static_cast<int>(t.side)];
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      const int a = find_root(parent, 2 * nodes[0] + t.component);
      const int b = find_root(parent, 2 * nodes[k] + t.component);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, double> fixed_root;
  for (const auto& f : bc.fixed) {
    check_component(f.component);
    if (!std::isfinite(f.value)) throw ConfigError("prescribed displacement is not finite");
    for (int node : mesh.side_nodes[static_cast<int>(f.side)]) {
      const int r = find_root(parent, 2 * node + f.component);
      auto [it, fresh] = fixed_root.try_emplace(r, f.value);
      if (!fresh && it->second != f.value) throw ConfigError("conflicting prescribed displacements");
    }
  }
  free_index_.assign(n, -1);
  prescribed_ = Eigen::VectorXd::Zero(n);
  std::vector<int> root_index(n, -1);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    const int r = find_root(parent, i);
    if (auto it = fixed_root.find(r); it != fixed_root.end()) {
      prescribed_[i] = it->second;
      continue;
    }
    if (root_index[r] < 0) root_index[r] = num_free_++;
    free_index_[i] = root_index[r];
    trip.emplace_back(i, root_index[r], 1.0);
  }
  q_.resize(n, num_free_);
  q_.setFromTriplets(trip.begin(), trip.end());
}

MacroModel::MacroModel(MacroMesh mesh, MacroBoundary bc)
    : mesh_(std::move(mesh)), bc_(std::move(bc)), dofs_(mesh_, bc_), quad_(macro_quadrature(mesh_)) {
  const int n = dofs_.num_full();
  std::vector<Eigen::Triplet<double>> trip;
  for (int q = 0; q < num_points(); ++q) {
    const auto& gp = quad_[q];
    const auto& quad = mesh_.quads[gp.element];
    for (int r = 0; r < 3; ++r) {
      for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 2; ++c) {
          const double v = gp.b(r, 2 * a + c);
          if (v != 0.0) trip.emplace_back(3 * q + r, 2 * quad[a] + c, v);
        }
      }
    }
  }
  b_full_.resize(3 * num_points(), n);
  b_full_.setFromTriplets(trip.begin(), trip.end());
  b_free_ = b_full_ * dofs_.expansion();

  f_full_ = Eigen::VectorXd::Zero(n);
  for (const auto& t : bc_.tractions) {
    if (!t.value.allFinite()) throw ConfigError("traction is not finite");
    for (const auto& e : mesh_.side_edges[static_cast<int>(t.side)]) {
      const double len = (mesh_.nodes[e.b] - mesh_.nodes[e.a]).norm();
      f_full_.segment<2>(2 * e.a) += 0.5 * len * t.value;
      f_full_.segment<2>(2 * e.b) += 0.5 * len * t.value;
    }
  }
}

std::vector<SymTensor2> MacroModel::strains(const Eigen::VectorXd& u_full) const {
  if (u_full.size() != dofs_.num_full()) throw ContractError("macro displacement has the wrong size");
  const Eigen::VectorXd e = b_full_ * u_full;
  std::vector<SymTensor2> out(num_points());
  for (int q = 0; q < num_points(); ++q) out[q] = strain_from_voigt(e.segment<3>(3 * q));
  return out;
}

Eigen::VectorXd MacroModel::internal_force_full(std::span<const SymTensor2> sigma) const {
  if (static_cast<int>(sigma.size()) != num_points()) throw ContractError("one stress per quadrature point expected");
  Eigen::VectorXd s(3 * num_points());
  for (int q = 0; q < num_points(); ++q) s.segment<3>(3 * q) = quad_[q].weight * stress_to_voigt(sigma[q]);
  return b_full_.transpose() * s;
}

Eigen::VectorXd MacroModel::tangent_force_full(std::span<const Eigen::Matrix3d> dh,
                                               const Eigen::VectorXd& u_full) const {
  if (static_cast<int>(dh.size()) != num_points()) throw ContractError("one tangent per quadrature point expected");
  const Eigen::VectorXd e = b_full_ * u_full;
  Eigen::VectorXd s(3 * num_points());
  for (int q = 0; q < num_points(); ++q) s.segment<3>(3 * q) = quad_[q].weight * (dh[q] * e.segment<3>(3 * q));
  return b_full_.transpose() * s;
}

MacroMatrix assemble_macro_tangent(const MacroModel& model, std::span<const Eigen::Matrix3d> dh) {
  const int m = model.num_points();
  if (static_cast<int>(dh.size()) != m) throw ContractError("missing homogenized tangent at a quadrature point");
  std::vector<Eigen::Triplet<double>> trip;
  for (int q = 0; q < m; ++q) {
    if (!dh[q].allFinite()) throw ContractError("homogenized tangent is not finite");
    const double w = model.quadrature()[q].weight;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) trip.emplace_back(3 * q + i, 3 * q + j, w * dh[q](i, j));
    }
  }
  MacroMatrix d(3 * m, 3 * m);
  d.setFromTriplets(trip.begin(), trip.end());
  const auto& b = model.strain_operator();
  MacroMatrix k = b.transpose() * d * b;
  MacroMatrix kt = k.transpose();
  return 0.5 * (k + kt);
}

Eigen::VectorXd out_of_balance(const MacroModel& model, const Eigen::VectorXd& f, std::span<const SymTensor2> sigma) {
  if (f.size() != model.dofs().num_free()) throw ContractError("load vector has the wrong size");
  return f - model.dofs().restrict(model.internal_force_full(sigma));
}

}  // namespace microcontact

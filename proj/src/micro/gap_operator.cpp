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

#include "microcontact/errors.hpp"
#include "microcontact/micro/gap_operator.hpp"

namespace microcontact {

GapOperator assemble_gap_operator(const ContactPairing& pairing, const PeriodicCellMesh& mesh,
                                  const CellSpace& space) {
  const int n = pairing.size();
  std::vector<Eigen::Triplet<double>> trip;
  GapOperator g;
  g.ref_offset.resize(n);
  auto add_side = [&](int row, const SidePoint& s, double sign, const Point& normal) {
    const double w[2] = {1.0 - s.weight, s.weight};
    const int nodes[2] = {s.node_a, s.node_b};
    for (int k = 0; k < (s.is_node() ? 1 : 2); ++k) {
      const double f = sign * (s.is_node() ? 1.0 : w[k]);
      trip.emplace_back(row, 2 * nodes[k], f * normal.x());
      trip.emplace_back(row, 2 * nodes[k] + 1, f * normal.y());
    }
  };
  for (int i = 0; i < n; ++i) {
    const auto& r = pairing.records[i];
    add_side(i, r.plus, 1.0, r.normal);
    add_side(i, r.minus, -1.0, r.normal);
    g.ref_offset[i] = r.ref_gap;
  }
  g.full.resize(n, space.num_full());
  g.full.setFromTriplets(trip.begin(), trip.end());
  g.reduced = g.full * space.expansion();
  (void)mesh;
  return g;
}

SchurComplement assemble_schur(const GapOperator& gap, const Factorization& factor) {
  SchurComplement s;
  const Eigen::MatrixXd gt = Eigen::MatrixXd(gap.reduced.transpose());
  s.a_inv_gt = factor.solve(gt);
  s.c = gap.reduced * s.a_inv_gt;
  return s;
}

Eigen::VectorXd compute_h(const Factorization& factor, const GapOperator& gap, const Eigen::VectorXd& stress_rhs,
                          const Eigen::VectorXd& u_prev_full) {
  if (stress_rhs.size() != factor.dimension()) throw ContractError("stress load has the wrong size");
  return gap.ref_offset + gap.full * u_prev_full + gap.reduced * factor.solve(stress_rhs);
}

Eigen::VectorXd recover_fluctuation(const Factorization& factor, const GapOperator& gap,
                                    const Eigen::VectorXd& lambda, const Eigen::VectorXd& stress_rhs) {
  return factor.solve(Eigen::VectorXd(stress_rhs + gap.reduced.transpose() * lambda));
}

}  // namespace microcontact

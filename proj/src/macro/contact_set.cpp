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
#include <deque>

#include "microcontact/errors.hpp"
#include "microcontact/homog/correctors.hpp"
#include "microcontact/macro/contact_set.hpp"
#include "microcontact/macro/parallel.hpp"

namespace microcontact {

std::vector<int> gamma_records(const ContactPairing& pairing, std::span<const int> active, int gamma) {
  const int n = pairing.size();
  std::vector<char> on(n, 0);
  for (int r : active) {
    if (r < 0 || r >= n) throw ContractError("active record index out of range");
    on[r] = 1;
  }
  std::vector<int> out;
  if (gamma < 0) {
    for (int i = 0; i < n; ++i) {
      if (!on[i]) out.push_back(i);
    }
    return out;
  }
  std::vector<int> hops(n, -1);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    const auto& rec = pairing.records[i];
    const bool edge = (rec.prev >= 0 && on[rec.prev] != on[i]) || (rec.next >= 0 && on[rec.next] != on[i]);
    if (edge) {
      hops[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    if (hops[i] + 1 >= gamma) continue;
    for (int j : {pairing.records[i].prev, pairing.records[i].next}) {
      if (j >= 0 && hops[j] < 0) {
        hops[j] = hops[i] + 1;
        queue.push_back(j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (hops[i] >= 0 && hops[i] < gamma) out.push_back(i);
  }
  return out;
}

void linearize_bilateral(MicroState& state, const CellContext& ctx) {
  const auto corr = solve_correctors(ctx, state.active);
  state.tangent = homogenized_tangent(ctx, corr);
  state.sensitivity = ContactSensitivity{};
}

void linearize_gamma(MicroState& state, const CellContext& ctx, int gamma) {
  const auto near = gamma_records(ctx.pairing(), state.active, gamma);
  std::vector<int> reduced, monitored;
  std::set_difference(state.active.begin(), state.active.end(), near.begin(), near.end(),
                      std::back_inserter(reduced));
  std::set_difference(near.begin(), near.end(), state.active.begin(), state.active.end(),
                      std::back_inserter(monitored));
  const auto corr = solve_correctors(ctx, reduced);
  state.tangent = homogenized_tangent(ctx, corr);
  state.sensitivity = contact_sensitivity(ctx, corr, state.u_mic_full, monitored);
}

SigmaGammaSet build_sigma_gamma(std::span<MicroState> states, const CellContext& ctx, int gamma, int threads) {
  parallel_for(static_cast<int>(states.size()), threads,
               [&](int q) { linearize_gamma(states[q], ctx, gamma); });
  SigmaGammaSet set;
  set.gamma = gamma;
  for (int q = 0; q < static_cast<int>(states.size()); ++q) {
    const auto& s = *states[q].sensitivity;
    for (int k = 0; k < s.size(); ++k) set.entries.push_back({q, s.records[k], s.p_hat[k], s.s_tilde[k]});
  }
  return set;
}

}  // namespace microcontact

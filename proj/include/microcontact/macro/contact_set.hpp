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

#include <span>
#include <vector>

#include "microcontact/micro/cell_context.hpp"
#include "microcontact/micro/local_contact.hpp"
#include "microcontact/tensor.hpp"

namespace microcontact {

// Gamma value selecting every open record instead of a neighbourhood.
inline constexpr int kFullGamma = -1;

// Records within gamma - 1 hops (along the prev/next links) of a record whose
// activity differs from one of its neighbours. kFullGamma returns every
// record not in `active`. Sorted.
std::vector<int> gamma_records(const ContactPairing& pairing, std::span<const int> active, int gamma);

struct SigmaGammaEntry {
  int point = 0;
  int record = 0;
  SymTensor2 p_hat;
  double s_tilde = 0.0;
};

struct SigmaGammaSet {
  std::vector<SigmaGammaEntry> entries;
  int gamma = 1;

  int size() const { return static_cast<int>(entries.size()); }
};

// Tangent on the full active set, no monitored records.
void linearize_bilateral(MicroState& state, const CellContext& ctx);

// Tangent on active minus the gamma records, sensitivities on the gamma records.
void linearize_gamma(MicroState& state, const CellContext& ctx, int gamma);

// Linearizes every state with linearize_gamma and collects the entries in
// point-major, record-minor order.
SigmaGammaSet build_sigma_gamma(std::span<MicroState> states, const CellContext& ctx, int gamma, int threads = 1);

}  // namespace microcontact

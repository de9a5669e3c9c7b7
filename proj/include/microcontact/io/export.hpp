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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "microcontact/macro/model.hpp"
#include "microcontact/macro/two_scale.hpp"
#include "microcontact/micro/cell_context.hpp"
#include "microcontact/micro/local_contact.hpp"

namespace microcontact {

// Shortest round-trip decimal form, identical across runs.
std::string format_number(double x);

// Legacy VTK, ASCII unstructured grid. The macro file carries nodal
// displacements, per-element averages of the point stresses and the mean
// number of active micro records per point as `n_contact`.
void write_macro_vtk(std::ostream& out, const MacroModel& model, const Eigen::VectorXd& u_full,
                     std::span<const SymTensor2> sigma, std::span<const int> n_active);
void export_macro_vtk(const std::filesystem::path& path, const MacroModel& model, const MacroState& state);

// Cell on deformed coordinates y + scale * u, triangle stresses and the
// contact pressure lambda as point data on the pore faces.
void write_micro_vtk(std::ostream& out, const CellContext& ctx, const MicroState& state, double deform_scale);
void export_micro_vtk(const std::filesystem::path& path, const CellContext& ctx, const MicroState& state,
                      double deform_scale);

// One row per contact record: record,t,x,y,gap,lambda.
void export_micro_records(const std::filesystem::path& path, const CellContext& ctx, const MicroState& state);

inline constexpr const char* kConvergenceHeader = "step,outer_iter,method,norm_du,norm_r,norm_lambda,n_active_total";

// Appends one row, writing the header first when the file is new or empty.
// Single writer per file.
void append_convergence(const std::filesystem::path& path, const IterationRecord& record);

}  // namespace microcontact

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

#include "microcontact/mesh/cell_mesh.hpp"

namespace microcontact {

void write_cell_mesh(const PeriodicCellMesh& mesh, std::ostream& out);
PeriodicCellMesh read_cell_mesh(std::istream& in);
void save_cell_mesh(const PeriodicCellMesh& mesh, const std::filesystem::path& path);
PeriodicCellMesh load_cell_mesh(const std::filesystem::path& path);

void write_macro_mesh(const MacroMesh& mesh, std::ostream& out);
MacroMesh read_macro_mesh(std::istream& in);

}  // namespace microcontact

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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "microcontact/macro/model.hpp"
#include "microcontact/macro/two_scale.hpp"
#include "microcontact/mesh/generators.hpp"

namespace microcontact {

enum class CellKind { slit, ring, solid, file };

struct CellConfig {
  CellKind kind = CellKind::slit;
  SlitCellParams slit;
  RingCellParams ring;
  double solid_edge_length = 0.1;
  std::string path;  // kind == file

  bool operator==(const CellConfig&) const = default;
};

struct MacroConfig {
  int nx = 2;
  int ny = 1;
  double lx = 1.0;
  double ly = 1.0;
  MacroBoundary boundary;
  int load_steps = 1;

  bool operator==(const MacroConfig&) const = default;
};

struct SolverConfig {
  MacroMethod method = MacroMethod::ml;
  int gamma = 1;
  double tol_outer = 1e-12;
  double plateau_tol = 1e-8;
  int max_outer = 40;
  double micro_tol = 1e-10;
  int micro_max_iter = 50;
  double beta0 = 0.0;
  double uzawa_tol = 1e-10;
  int uzawa_max_iter = 20000;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  int threads = 1;

  bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  bool vtk = true;
  bool csv = true;
  double deform_scale = 1.0;
  std::vector<int> micro_points{0};

  bool operator==(const OutputConfig&) const = default;
};

struct ProblemConfig {
  std::string name = "custom";
  double young = 2.3;  // GPa
  double poisson = 0.3;
  CellConfig cell;
  MacroConfig macro;
  SolverConfig solver;
  OutputConfig output;

  bool operator==(const ProblemConfig&) const = default;
};

std::vector<std::string> preset_names();
// Throws ConfigError for unknown names.
ProblemConfig preset(std::string_view name);

// Throws ConfigError when an invariant is violated.
void validate(const ProblemConfig& cfg);

// A "preset" key selects the base configuration, other keys override it.
// Unknown keys are reported in `warnings`. Throws ConfigError on malformed
// input, with the line and column for syntax errors.
ProblemConfig parse_config(std::string_view text, std::vector<std::string>* warnings = nullptr);
ProblemConfig load_config(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

nlohmann::json to_json(const ProblemConfig& cfg);
void save_config(const ProblemConfig& cfg, const std::filesystem::path& path);

PeriodicCellMesh build_cell(const CellConfig& cfg);
MacroModel build_macro(const MacroConfig& cfg);
TwoScaleOptions solver_options(const ProblemConfig& cfg);

// MICROCONTACT_OUT, when set, replaces the configured directory.
std::filesystem::path output_directory(const ProblemConfig& cfg);

}  // namespace microcontact

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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "microcontact_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI inside the work directory; stdout and stderr are captured together.
Run run(const std::string& args, const std::string& env = "") {
  const fs::path log = workdir() / "stdout.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && " + env + (env.empty() ? "" : " ") + "'" +
                          MICROCONTACT_CLI_PATH + "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

double last_residual(const fs::path& csv) {
  const auto rows = split(slurp(csv), '\n');
  REQUIRE(rows.size() >= 2);
  return std::stod(split(rows.back(), ',').at(4));
}

// Values of one named array in a legacy VTK file.
std::vector<double> vtk_array(const fs::path& p, const std::string& name) {
  std::ifstream in(p);
  std::string word;
  int count = 0;
  std::vector<double> out;
  while (in >> word) {
    if (word == "CELL_DATA" || word == "POINT_DATA") in >> count;
    if ((word == "SCALARS" || word == "VECTORS")) {
      std::string n;
      in >> n;
      if (n != name) continue;
      std::string rest;
      std::getline(in, rest);
      const bool vec = word == "VECTORS";
      if (!vec) std::getline(in, rest);
      out.resize(vec ? 3 * count : count);
      for (auto& x : out) in >> x;
      return out;
    }
  }
  FAIL("array " << name << " not found in " << p);
  return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("micro --cell slit").code == 1);
  CHECK(run("micro --cell slit --strain 1,2").code == 1);
  CHECK(run("micro --cell /nonexistent.cellmesh --strain 0,0,0").code == 1);
  CHECK(run("macro --preset shear").code == 1);
  CHECK(run("macro --preset uniaxial --method gauss").code == 1);
  CHECK(run("macro --preset uniaxial --gamma -3").code == 1);
  CHECK(run("check --suite nothing").code == 1);
}

TEST_CASE("micro runs on the example loads") {
  auto r = run("micro --cell slit --strain 0.014,-0.04,0 --out slit_a");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("active 0,") == std::string::npos);
  for (const char* f : {"cell.vtk", "cell.cellmesh", "records.csv", "micro_convergence.csv"}) {
    CHECK(fs::exists(workdir() / "slit_a" / f));
  }
  const auto lambda = vtk_array(workdir() / "slit_a" / "cell.vtk", "lambda");
  double top = 0.0;
  for (double x : lambda) top = std::max(top, x);
  CHECK(top > 0.0);

  CHECK(run("micro --cell ring --strain 0,0,0.05 --out ring_b").code == 0);

  // the exported mesh is a valid input
  CHECK(run("micro --cell slit_a/cell.cellmesh --strain 0.014,-0.04,0 --out reread").code == 0);
  CHECK(slurp(workdir() / "reread" / "records.csv") == slurp(workdir() / "slit_a" / "records.csv"));
}

TEST_CASE("micro at zero strain writes zero fields") {
  REQUIRE(run("micro --cell slit --strain 0,0,0 --out zero").code == 0);
  const fs::path vtk = workdir() / "zero" / "cell.vtk";
  for (const char* name : {"displacement", "lambda", "sigma_xx", "sigma_yy", "sigma_xy"}) {
    for (double x : vtk_array(vtk, name)) CHECK(x == 0.0);
  }
  const auto rows = split(slurp(workdir() / "zero" / "records.csv"), '\n');
  for (size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i], ',').at(5) == "0");
}

TEST_CASE("macro uniaxial with each method") {
  const auto nw = run("macro --preset uniaxial --method mc-newton --out newton");
  REQUIRE(nw.code == 0);
  CHECK(last_residual(workdir() / "newton" / "convergence.csv") <= 1e-13);
  const auto uz = run("macro --preset uniaxial --method mc-uzawa --out uzawa");
  REQUIRE(uz.code == 0);
  CHECK(last_residual(workdir() / "uzawa" / "convergence.csv") <= 1e-9);
  REQUIRE(run("macro --preset uniaxial --method ml --gamma full --out ml").code == 0);
  CHECK(last_residual(workdir() / "ml" / "convergence.csv") <= 1e-13);

  const auto header = split(slurp(workdir() / "newton" / "convergence.csv"), '\n').at(0);
  CHECK(header == "step,outer_iter,method,norm_du,norm_r,norm_lambda,n_active_total");
  for (const char* f : {"config.json", "macro.vtk", "micro_0.vtk", "micro_0_records.csv"}) {
    CHECK(fs::exists(workdir() / "newton" / f));
  }
  // the written configuration reproduces the run
  REQUIRE(run("macro --config newton/config.json --out replay").code == 0);
  CHECK(slurp(workdir() / "replay" / "convergence.csv") == slurp(workdir() / "newton" / "convergence.csv"));
}

TEST_CASE("repeated runs give identical logs") {
  REQUIRE(run("macro --preset uniaxial --method mc-uzawa --out rep1").code == 0);
  REQUIRE(run("macro --preset uniaxial --method mc-uzawa --out rep1 --threads 1").code == 0);
  const std::string first = slurp(workdir() / "rep1" / "convergence.csv");
  REQUIRE(run("macro --preset uniaxial --method mc-uzawa --out rep2 --threads 3").code == 0);
  CHECK(first == slurp(workdir() / "rep2" / "convergence.csv"));
  CHECK(slurp(workdir() / "rep1" / "macro.vtk") == slurp(workdir() / "rep2" / "macro.vtk"));
  CHECK(split(first, '\n').size() == split(slurp(workdir() / "uzawa" / "convergence.csv"), '\n').size());
}

TEST_CASE("output directory from the environment") {
  const fs::path target = workdir() / "from_env";
  REQUIRE(run("macro --preset uniaxial", "MICROCONTACT_OUT='" + target.string() + "'").code == 0);
  CHECK(fs::exists(target / "convergence.csv"));
  REQUIRE(run("micro --cell slit --strain 0,0,0", "MICROCONTACT_OUT='" + target.string() + "'").code == 0);
  CHECK(fs::exists(target / "cell.vtk"));
  // an explicit flag wins
  REQUIRE(run("micro --cell slit --strain 0,0,0 --out flag", "MICROCONTACT_OUT='" + target.string() + "'").code ==
          0);
  CHECK(fs::exists(workdir() / "flag" / "cell.vtk"));
  // default
  REQUIRE(run("micro --cell slit --strain 0,0,0").code == 0);
  CHECK(fs::exists(workdir() / "out" / "cell.vtk"));
}

TEST_CASE("bending contact sits near the clamped edge") {
  REQUIRE(run("macro --preset bending --method ml --out bending").code == 0);
  const auto n = vtk_array(workdir() / "bending" / "macro.vtk", "n_contact");
  REQUIRE(n.size() == 16);
  double bottom = 0.0, top = 0.0;
  for (int e = 0; e < 4; ++e) bottom += n[e];
  for (int e = 12; e < 16; ++e) top += n[e];
  CHECK(bottom > 0.0);
  CHECK(bottom > top);
  CHECK(fs::exists(workdir() / "bending" / "micro_13.vtk"));
}

TEST_CASE("non-convergence exits with 2") {
  const auto r = run("macro --preset uniaxial --method mc-newton --max-outer 2 --out short");
  CHECK(r.code == 2);
  CHECK(r.out.find("load step 1") != std::string::npos);
}

TEST_CASE("property suites") {
  const auto micro = run("check --suite micro");
  CHECK(micro.code == 0);
  CHECK(micro.out.find("FAIL") == std::string::npos);
  const auto all = run("check");
  CHECK(all.code == 0);
  for (const char* suite : {"micro ", "homog ", "macro "}) CHECK(all.out.find(suite) != std::string::npos);
  const auto faulty = run("check --suite micro --inject-fault h-sign");
  CHECK(faulty.code == 3);
  CHECK(faulty.out.find("FAIL micro  kkt_slit_strain_a") != std::string::npos);
  CHECK(run("check --inject-fault other").code == 1);
}

TEST_CASE("make-mesh") {
  REQUIRE(run("make-mesh --cell ring --edge-length 0.1 --vtk -o meshes/ring.cellmesh").code == 0);
  CHECK(fs::exists(workdir() / "meshes" / "ring.vtk"));
  CHECK(run("micro --cell meshes/ring.cellmesh --strain 0,0,0.05 --out ring_file").code == 0);
  CHECK(run("make-mesh --cell ring --edge-length -1").code == 1);
}

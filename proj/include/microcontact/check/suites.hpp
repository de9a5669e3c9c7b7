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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace microcontact {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckOptions {
  bool flip_h_sign = false;  // deliberate fault, the suites must catch it
  int threads = 1;
};

std::vector<std::string> suite_names();

// Runs one suite or "all". Every property reports, failures included;
// exceptions inside a property count as failures. Unknown names throw ConfigError.
std::vector<PropertyResult> run_suite(std::string_view suite, const CheckOptions& opts = {});

void print_results(std::ostream& out, const std::vector<PropertyResult>& results);
bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace microcontact

// Copyright 2026 The aide-cpp Authors
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

#include "aide/baselines.hpp"

#include <cstdio>

namespace aide {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string DiagnosticReport::csv_header() const {
  return "gold_value,target_value,gold_se,target_se,n_runs";
}

std::string DiagnosticReport::csv_row() const {
  return format_value(gold_value) + "," + format_value(target_value) + "," +
         format_value(gold_se) + "," + format_value(target_se) + "," +
         std::to_string(n_runs);
}

}  // namespace aide

// Copyright 2026 The qkdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: analyze, simulate and table subcommands.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qkd/sim_harness.hpp"

namespace qkd::cli {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kCsvSchema = "v1";

enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kConfigMismatch = 3,
  kIoError = 4,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "START:END:STEP", inclusive of END up to rounding. Throws UsageError on
// malformed or empty grids.
std::vector<double> parse_grid(std::string_view spec);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json stats_to_json(const RunStats& stats);

// Full simulate document: {"version", "config", "stats"}.
nlohmann::ordered_json simulate_document(const ExperimentConfig& config,
                                         const RunStats& stats);

std::string format_number(double v);

// Entry point shared by the qkdsim binary and the tests. args excludes
// argv[0].
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qkd::cli

// Copyright 2026 The ftcc-lab Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ftcc {

class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct GridSpec {
    double lo{0};
    double hi{0};
    int steps{1};  // points, endpoints included

    std::vector<double> points() const;
    friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/// Parses "lo:hi:steps".
GridSpec parse_grid(const std::string &text);

/// Everything that determines an output table. `workers` and `out` only
/// affect execution and are not echoed.
struct RunConfig {
    std::string command{"sweep"};  // sweep | simulate | threshold | encode | compare-vn
    std::string model;             // empty: per-command default
    int level{3};
    int t{6};
    std::optional<double> eps;
    std::optional<double> p;
    std::optional<GridSpec> grid;
    std::string grid_var{"eps"};  // eps | p, for --grid
    std::uint64_t seed{1};
    std::uint64_t min_flips{300};
    std::uint64_t max_phases{10'000'000};
    std::string noise{"idealized"};  // idealized | componentwise
    std::string readout;             // empty: corrected on the hypercube, majority otherwise
    std::uint64_t trials{100'000};
    int correction_phases{12};
    bool pcrit{false};
    bool mc{false};
    std::string format{"csv"};  // csv | json

    int workers{1};
    std::string out;  // empty: stdout

    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

/// Echoed fields as (key, value) in fixed order.
std::vector<std::pair<std::string, std::string>> config_fields(const RunConfig &config);
RunConfig config_from_fields(const std::vector<std::pair<std::string, std::string>> &fields);

/// Throws ConfigError for inconsistent combinations.
void validate(const RunConfig &config);

struct Row {
    double x{0};
    double y{0};
    double y_lo{0};
    double y_hi{0};
    std::string model;
    int n{0};
    std::uint64_t seed{0};
};

struct RunResult {
    std::vector<Row> rows;
    std::vector<std::string> warnings;
};

RunResult execute(const RunConfig &config);

/// Renders the table with its config header in config.format.
std::string render(const RunConfig &config, const std::vector<Row> &rows);

/// Reconstructs the config echoed in a rendered table (CSV or JSON).
RunConfig parse_header(const std::string &rendered);

/// Validates, executes and writes the table to config.out (via a temporary
/// file and rename) or `stdout`. Returns the process exit status.
int run(const RunConfig &config);

}  // namespace ftcc

// Copyright 2026 The pint Authors
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

// Flat key=value run configuration with dotted sections, e.g.
//
//   problem.example = ex1_case1
//   problem.M = 16
//   gmres.rtol = 1e-8
//
// '#' starts a comment. Unknown keys and malformed values are errors that name
// the offending line.

#include "pint/discretization.hpp"
#include "pint/errors.hpp"
#include "pint/krylov.hpp"

#include <istream>
#include <optional>
#include <string>

namespace pint::app {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string example = "ex1_case1";  // ex1_case1, ex1_case2, ex2, heat, riesz
    std::size_t time_steps = 16;
    std::size_t n = 15;                 // interior points per axis
    std::size_t dim = 2;                // riesz only
    double theta = 0.5;
    double t_final = 1.0;
    FractionalScheme scheme = FractionalScheme::hoc4;
    double alpha1 = 1.5;
    double alpha2 = 1.5;
    bool precondition = true;
    std::optional<double> omega;
    int workers = 1;
    GmresConfig gmres;
    std::string solution_path;          // empty: no dump
};

[[nodiscard]] RunConfig parse_config(std::istream& in);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Builds and validates the problem described by the config.
[[nodiscard]] ProblemSpec make_spec(const RunConfig& cfg);

/// Builds one of the named examples (throws ConfigError on an unknown name).
[[nodiscard]] ProblemSpec example_spec(const std::string& example, std::size_t n, std::size_t m, double theta,
                                       double alpha1, double alpha2, FractionalScheme scheme, std::size_t dim = 2);

[[nodiscard]] FractionalScheme parse_scheme(const std::string& s);

} // namespace pint::app

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

#include "config.hpp"

#include "pint/krylov.hpp"
#include "pint/verification.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pint::app {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotConverged = 2, kVerifyFailed = 3 };

struct SolveOutcome {
    Vector solution;
    SolveReport report;
    std::optional<double> omega;  // empty without preconditioner
};

/// Assembles A and f for `spec`, optionally builds P_omega, and runs GMRES from
/// x0 = 0. Fills error_inf when the spec has an exact solution.
[[nodiscard]] SolveOutcome solve_spec(const ProblemSpec& spec, bool precondition, std::optional<double> omega,
                                      const GmresConfig& gmres, int workers = 1);

/// Returns the exit code; the JSON report is written to `out_json` (stdout if empty).
int run_solve(const std::string& config_path, std::optional<double> omega_override, const std::string& out_json);

struct BenchCase {
    std::string example = "ex1_case1";
    std::vector<std::size_t> ms;
    std::vector<std::size_t> ns;  // interior points per axis
    std::vector<std::pair<double, double>> alphas = {{1.1, 1.2}};
    std::vector<std::string> methods = {"pgmres"};
    double theta = 0.5;
    FractionalScheme scheme = FractionalScheme::hoc4;
    std::optional<double> omega;
    int workers = 1;
    GmresConfig gmres;
};

struct ReportRow {
    std::string case_id;
    std::string method;
    double theta = 0.5;
    std::optional<double> omega;
    std::size_t m = 0;
    std::size_t n = 0;
    std::optional<double> alpha1;
    std::optional<double> alpha2;
    std::optional<double> error_inf;
    std::size_t iters = 0;
    double wall_time_s = 0.0;
    bool converged = false;

    bool operator==(const ReportRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "case,method,theta,omega,M,n,alpha1,alpha2,error_inf,iters,wall_time_s,converged";

[[nodiscard]] std::vector<ReportRow> run_bench_rows(const BenchCase& bench);
[[nodiscard]] std::string format_csv(const std::vector<ReportRow>& rows);
[[nodiscard]] std::vector<ReportRow> parse_csv(const std::string& text);

int run_bench(const BenchCase& bench, const std::string& out_csv);

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_json);

} // namespace pint::app

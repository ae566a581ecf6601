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

// Restarted GMRES with left preconditioning.

#include "pint/structured_kernels.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace pint {

/// y = Op(x); y never aliases x.
using LinearMap = std::function<void(std::span<const double> x, std::span<double> y)>;

struct GmresConfig {
    std::size_t restart = 50;
    std::size_t maxit = 1000;  // outer cycles
    double rtol = 1e-8;
    bool record_true_residual = true;
    bool reorthogonalize = false;
};

struct SolveReport {
    std::size_t iters_total = 0;
    bool converged = false;
    /// Entry 0 is ||M^{-1}(b - A x0)||; entry k the least-squares residual after
    /// the k-th inner iteration.
    Vector preconditioned_residual_history;
    /// ||b - A x|| / ||b - A x0|| at exit (NaN when not recorded).
    double true_residual_final = 0.0;
    std::optional<double> error_inf;
    double wall_time_s = 0.0;
};

struct GmresResult {
    Vector x;
    SolveReport report;
};

/// Solves A x = b. An empty `minv` means no preconditioner; an empty `x0` means
/// the zero vector. Stops when ||M^{-1}(b - A x_k)|| <= rtol ||M^{-1}(b - A x0)||
/// or after maxit * restart inner iterations. Throws NumericalError on NaN/Inf.
[[nodiscard]] GmresResult gmres_solve(const LinearMap& a, const LinearMap& minv, std::span<const double> b,
                                      std::span<const double> x0, const GmresConfig& cfg = {});

} // namespace pint

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

// Ready-made problem instances: the two variable-coefficient diffusion cases,
// the 2-D Riesz fractional example, a constant-coefficient heat problem and a
// generic fractional instance with smooth data.

#include "pint/discretization.hpp"

#include <cstddef>
#include <vector>

namespace pint {

/// a = 40 + x^3.5 + y^3.5 on (0,1)^2, u = sin(pi x) sin(pi y) t^2, T = 1.
[[nodiscard]] ProblemSpec ex1_case1(std::size_t n, std::size_t m, double theta = 0.5);

/// a = (20 + x^2)(20 + y^2) on (0,1)^2, u = e^t x(1-x) y(1-y), T = 1.
[[nodiscard]] ProblemSpec ex1_case2(std::size_t n, std::size_t m, double theta = 0.5);

/// Riesz fractional diffusion on (0,2)^2 with K = 1 and
/// u = e^{-t/3} x^4 (2-x)^4 y^4 (2-y)^4, T = 1.
[[nodiscard]] ProblemSpec ex2(std::size_t n, std::size_t m, double alpha1, double alpha2,
                              FractionalScheme scheme = FractionalScheme::hoc4, double theta = 0.5);

/// a = 1 on (0,1)^2, u = sin(pi x) sin(pi y) t^2. The preconditioner is exact here.
[[nodiscard]] ProblemSpec heat_problem(std::size_t n, std::size_t m, double theta = 0.5);

/// Fractional instance on (0,1)^d with K = 1, psi = prod x(1-x) and f = 1; no
/// exact solution. Used by the verification battery.
[[nodiscard]] ProblemSpec riesz_problem(std::vector<double> alpha, std::size_t n, std::size_t m,
                                        FractionalScheme scheme, double theta = 0.5);

} // namespace pint

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

#include "pint/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pint {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<Interval> unit_square() { return {{0.0, 1.0}, {0.0, 1.0}}; }

double bump8(double z) { return std::pow(z * (2.0 - z), 4); }

// -(d^alpha/d|z|^alpha) of z^4 (2-z)^4 on (0, 2).
double riesz_of_bump8(double z, double alpha)
{
    double sum = 0.0;
    const double binom[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
    for (int k = 0; k <= 4; ++k) {
        const double sign = (4 - k) % 2 == 0 ? 1.0 : -1.0;
        const double p = 8.0 - k - alpha;
        const double coef = sign * std::pow(2.0, k) * binom[k] * std::tgamma(9.0 - k) / std::tgamma(9.0 - k - alpha);
        sum += coef * (std::pow(z, p) + std::pow(2.0 - z, p));
    }
    return sum / (2.0 * std::cos(pi * alpha / 2.0));
}

} // namespace

ProblemSpec ex1_case1(std::size_t n, std::size_t m, double theta)
{
    ProblemSpec p;
    p.name = "ex1_case1";
    p.kind = OperatorKind::variable_laplacian;
    p.domain = unit_square();
    p.t_final = 1.0;
    p.time_steps = m;
    p.n = {n, n};
    p.theta = theta;
    p.coeff_a = [](std::span<const double> x) { return 40.0 + std::pow(x[0], 3.5) + std::pow(x[1], 3.5); };
    p.coeff_range = std::pair{40.0, 42.0};
    p.source_f = [](std::span<const double> x, double t) {
        const double a = 40.0 + std::pow(x[0], 3.5) + std::pow(x[1], 3.5);
        const double sx = std::sin(pi * x[0]), sy = std::sin(pi * x[1]);
        const double cx = std::cos(pi * x[0]), cy = std::cos(pi * x[1]);
        return sx * sy * (2.0 * t + 2.0 * pi * pi * a * t * t) -
               pi * t * t * (3.5 * std::pow(x[0], 2.5) * cx * sy + 3.5 * std::pow(x[1], 2.5) * sx * cy);
    };
    p.initial_psi = [](std::span<const double>) { return 0.0; };
    p.exact_u = [](std::span<const double> x, double t) {
        return std::sin(pi * x[0]) * std::sin(pi * x[1]) * t * t;
    };
    return p;
}

ProblemSpec ex1_case2(std::size_t n, std::size_t m, double theta)
{
    ProblemSpec p;
    p.name = "ex1_case2";
    p.kind = OperatorKind::variable_laplacian;
    p.domain = unit_square();
    p.t_final = 1.0;
    p.time_steps = m;
    p.n = {n, n};
    p.theta = theta;
    p.coeff_a = [](std::span<const double> x) { return (20.0 + x[0] * x[0]) * (20.0 + x[1] * x[1]); };
    p.coeff_range = std::pair{400.0, 441.0};
    p.source_f = [](std::span<const double> x, double t) {
        const double x1 = x[0], x2 = x[1];
        const double et = std::exp(t);
        const double bx = x1 * (1.0 - x1), by = x2 * (1.0 - x2);
        const double a = (20.0 + x1 * x1) * (20.0 + x2 * x2);
        return et * bx * by + 2.0 * a * et * (bx + by) -
               2.0 * x1 * (1.0 - 2.0 * x1) * by * (20.0 + x2 * x2) * et -
               2.0 * x2 * (1.0 - 2.0 * x2) * bx * (20.0 + x1 * x1) * et;
    };
    p.initial_psi = [](std::span<const double> x) { return x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]); };
    p.exact_u = [](std::span<const double> x, double t) {
        return std::exp(t) * x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]);
    };
    return p;
}

ProblemSpec ex2(std::size_t n, std::size_t m, double alpha1, double alpha2, FractionalScheme scheme,
                double theta)
{
    ProblemSpec p;
    p.name = "ex2";
    p.kind = OperatorKind::riesz_fractional;
    p.domain = {{0.0, 2.0}, {0.0, 2.0}};
    p.t_final = 1.0;
    p.time_steps = m;
    p.n = {n, n};
    p.theta = theta;
    p.scheme = scheme;
    p.alpha = {alpha1, alpha2};
    p.diffusivity = {1.0, 1.0};
    p.source_f = [alpha1, alpha2](std::span<const double> x, double t) {
        const double decay = std::exp(-t / 3.0);
        const double px = bump8(x[0]), py = bump8(x[1]);
        return decay * (py * riesz_of_bump8(x[0], alpha1) + px * riesz_of_bump8(x[1], alpha2)) -
               decay * px * py / 3.0;
    };
    p.initial_psi = [](std::span<const double> x) { return bump8(x[0]) * bump8(x[1]); };
    p.exact_u = [](std::span<const double> x, double t) {
        return std::exp(-t / 3.0) * bump8(x[0]) * bump8(x[1]);
    };
    return p;
}

ProblemSpec heat_problem(std::size_t n, std::size_t m, double theta)
{
    ProblemSpec p;
    p.name = "heat";
    p.kind = OperatorKind::variable_laplacian;
    p.domain = unit_square();
    p.t_final = 1.0;
    p.time_steps = m;
    p.n = {n, n};
    p.theta = theta;
    p.coeff_a = [](std::span<const double>) { return 1.0; };
    p.coeff_range = std::pair{1.0, 1.0};
    p.source_f = [](std::span<const double> x, double t) {
        return std::sin(pi * x[0]) * std::sin(pi * x[1]) * (2.0 * t + 2.0 * pi * pi * t * t);
    };
    p.initial_psi = [](std::span<const double>) { return 0.0; };
    p.exact_u = [](std::span<const double> x, double t) {
        return std::sin(pi * x[0]) * std::sin(pi * x[1]) * t * t;
    };
    return p;
}

ProblemSpec riesz_problem(std::vector<double> alpha, std::size_t n, std::size_t m, FractionalScheme scheme,
                          double theta)
{
    ProblemSpec p;
    p.name = "riesz_d" + std::to_string(alpha.size());
    p.kind = OperatorKind::riesz_fractional;
    p.domain.assign(alpha.size(), Interval{0.0, 1.0});
    p.t_final = 1.0;
    p.time_steps = m;
    p.n.assign(alpha.size(), n);
    p.theta = theta;
    p.scheme = scheme;
    p.diffusivity.assign(alpha.size(), 1.0);
    p.alpha = std::move(alpha);
    p.source_f = [](std::span<const double>, double) { return 1.0; };
    p.initial_psi = [](std::span<const double> x) {
        double v = 1.0;
        for (double xi : x) v *= xi * (1.0 - xi);
        return v;
    };
    return p;
}

} // namespace pint

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

#include "pint/krylov.hpp"

#include "pint/errors.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace pint {

namespace {

double dot(std::span<const double> x, std::span<const double> y)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * y[i];
    }
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void check_finite(std::span<const double> x, const char* where, std::size_t iter)
{
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw NumericalError(std::string("gmres: non-finite value in ") + where + " at iteration " +
                                 std::to_string(iter));
        }
    }
}

} // namespace

GmresResult gmres_solve(const LinearMap& a, const LinearMap& minv, std::span<const double> b,
                        std::span<const double> x0, const GmresConfig& cfg)
{
    if (cfg.restart < 1) {
        throw InvalidSpecError("gmres: restart must be >= 1");
    }
    if (!(cfg.rtol > 0.0)) {
        throw InvalidSpecError("gmres: rtol must be positive");
    }
    const std::size_t n = b.size();
    if (!x0.empty()) {
        require_size(x0.size(), n, "gmres_solve x0");
    }
    const auto start = std::chrono::steady_clock::now();

    GmresResult res;
    SolveReport& rep = res.report;
    res.x.assign(n, 0.0);
    if (!x0.empty()) {
        std::copy(x0.begin(), x0.end(), res.x.begin());
    }

    Vector tmp(n), r(n);
    // r = M^{-1}(b - A x); returns ||b - A x||.
    auto residual = [&](std::span<const double> x) {
        a(x, tmp);
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = b[i] - tmp[i];
        }
        const double true_norm = norm2(tmp);
        if (minv) {
            minv(tmp, r);
        } else {
            r = tmp;
        }
        return true_norm;
    };

    const double true0 = residual(res.x);
    double beta = norm2(r);
    check_finite(r, "initial residual", 0);
    rep.preconditioned_residual_history.push_back(beta);
    const double target = cfg.rtol * beta;
    double true_now = true0;

    if (beta == 0.0) {
        rep.converged = true;
    }

    const std::size_t m = std::min(cfg.restart, n);
    std::vector<Vector> basis;
    std::vector<Vector> hess(m, Vector(m + 1, 0.0));  // column-major: hess[j][i] = h_{i,j}
    Vector cs(m), sn(m), g(m + 1), w(n), av(n);

    for (std::size_t cycle = 0; cycle < cfg.maxit && !rep.converged; ++cycle) {
        if (basis.empty()) {
            basis.emplace_back(n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            basis[0][i] = r[i] / beta;
        }
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        std::size_t k = 0;
        bool breakdown = false;
        for (std::size_t j = 0; j < m; ++j) {
            a(basis[j], av);
            if (minv) {
                minv(av, w);
            } else {
                w = av;
            }
            check_finite(w, "Arnoldi vector", rep.iters_total + 1);
            const double wnorm = norm2(w);
            Vector& h = hess[j];
            std::fill(h.begin(), h.end(), 0.0);
            const int passes = cfg.reorthogonalize ? 2 : 1;
            for (int pass = 0; pass < passes; ++pass) {
                for (std::size_t i = 0; i <= j; ++i) {
                    const double hij = dot(w, basis[i]);
                    h[i] += hij;
                    for (std::size_t t = 0; t < n; ++t) {
                        w[t] -= hij * basis[i][t];
                    }
                }
            }
            h[j + 1] = norm2(w);

            for (std::size_t i = 0; i < j; ++i) {
                const double t0 = cs[i] * h[i] + sn[i] * h[i + 1];
                h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
                h[i] = t0;
            }
            const double hj1 = h[j + 1];
            const double rho = std::hypot(h[j], hj1);
            cs[j] = rho == 0.0 ? 1.0 : h[j] / rho;
            sn[j] = rho == 0.0 ? 0.0 : hj1 / rho;
            h[j] = rho;
            h[j + 1] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++rep.iters_total;
            k = j + 1;
            rep.preconditioned_residual_history.push_back(std::abs(g[j + 1]));

            breakdown = hj1 <= 1e-14 * wnorm;
            if (std::abs(g[j + 1]) <= target || breakdown) {
                break;
            }
            if (basis.size() < j + 2) {
                basis.emplace_back(n);
            }
            for (std::size_t t = 0; t < n; ++t) {
                basis[j + 1][t] = w[t] / hj1;
            }
        }

        // Back substitution for the k x k upper triangular system.
        Vector y(k);
        for (std::size_t i = k; i-- > 0;) {
            double s = g[i];
            for (std::size_t c = i + 1; c < k; ++c) {
                s -= hess[c][i] * y[c];
            }
            y[i] = s / hess[i][i];
        }
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t t = 0; t < n; ++t) {
                res.x[t] += y[c] * basis[c][t];
            }
        }
        check_finite(res.x, "iterate", rep.iters_total);

        true_now = residual(res.x);
        beta = norm2(r);
        if (beta <= target || (breakdown && beta <= std::max(target, 1e-14 * rep.preconditioned_residual_history[0]))) {
            rep.converged = true;
        }
        if (beta == 0.0) {
            rep.converged = true;
        }
    }

    rep.true_residual_final = cfg.record_true_residual ? (true0 > 0.0 ? true_now / true0 : 0.0)
                                                       : std::numeric_limits<double>::quiet_NaN();
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace pint

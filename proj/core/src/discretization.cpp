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

#include "pint/discretization.hpp"

#include "pint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pint {

namespace {

// Axes up to this order are applied through a materialized dense matrix.
constexpr std::size_t kDenseAxisLimit = 256;

[[noreturn]] void invalid(const std::string& msg)
{
    throw InvalidSpecError(msg);
}

void apply_riesz_1d(const RieszOperator1D& op, std::span<const double> x, std::span<double> out)
{
    const Vector y = sym_toeplitz_matvec(op.toeplitz, x);
    std::copy(y.begin(), y.end(), out.begin());
    if (op.edge.empty()) {
        return;
    }
    const std::size_t n = op.size();
    const auto& a = op.edge;
    double first = 0.0;
    double last = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        first += a[j] * x[j];
        last += a[n - 1 - j] * x[j];
    }
    out[0] += first;
    out[n - 1] += last;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] += a[i] * x[0] + a[n - 1 - i] * x[n - 1];
    }
}

} // namespace

std::string to_string(OperatorKind kind)
{
    return kind == OperatorKind::variable_laplacian ? "variable_laplacian" : "riesz_fractional";
}

std::string to_string(FractionalScheme scheme)
{
    return scheme == FractionalScheme::cd2 ? "cd2" : "hoc4";
}

std::size_t ProblemSpec::spatial_size() const noexcept
{
    std::size_t total = 1;
    for (std::size_t ni : n) {
        total *= ni;
    }
    return total;
}

void ProblemSpec::coordinates(std::size_t s, std::span<double> x) const noexcept
{
    for (std::size_t axis = dim(); axis-- > 0;) {
        x[axis] = node(axis, s % n[axis]);
        s /= n[axis];
    }
}

void ProblemSpec::validate() const
{
    const std::size_t d = dim();
    if (d < 1 || d > 2) {
        invalid("spatial dimension must be 1 or 2, got " + std::to_string(d));
    }
    if (n.size() != d) {
        invalid("expected one interior point count per axis");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (n[i] < 1) {
            invalid("interior point count n_" + std::to_string(i + 1) + " must be >= 1");
        }
        if (!(domain[i].hi > domain[i].lo)) {
            invalid("domain interval on axis " + std::to_string(i + 1) + " must have positive length");
        }
    }
    if (!(t_final > 0.0)) {
        invalid("final time T must be positive");
    }
    if (time_steps < 1) {
        invalid("number of time steps M must be >= 1");
    }
    if (!(theta >= 0.5 && theta <= 1.0)) {
        std::ostringstream os;
        os << "theta must lie in [1/2, 1], got " << theta;
        invalid(os.str());
    }
    if (kind == OperatorKind::riesz_fractional) {
        if (alpha.size() != d || diffusivity.size() != d) {
            invalid("riesz_fractional needs one alpha and one K per axis");
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!(alpha[i] > 1.0 && alpha[i] < 2.0)) {
                std::ostringstream os;
                os << "alpha_" << i + 1 << " must lie in the open interval (1, 2), got " << alpha[i];
                invalid(os.str());
            }
            if (!(diffusivity[i] > 0.0)) {
                invalid("diffusivity K_" + std::to_string(i + 1) + " must be positive");
            }
        }
    } else {
        if (d != 2) {
            invalid("variable_laplacian is supported in two dimensions only");
        }
        if (!coeff_a) {
            invalid("variable_laplacian needs a coefficient function a(x)");
        }
    }
    if (!source_f || !initial_psi) {
        invalid("source term f and initial data psi must be set");
    }
}

double RieszOperator1D::entry(std::size_t i, std::size_t j) const noexcept
{
    double v = toeplitz(i, j);
    if (!edge.empty()) {
        const std::size_t n = size();
        if (i == 0) v += edge[j];
        if (j == 0) v += edge[i];
        if (i == n - 1) v += edge[n - 1 - j];
        if (j == n - 1) v += edge[n - 1 - i];
    }
    return v;
}

SpatialOperator SpatialOperator::kron_sum(std::vector<RieszOperator1D> axes)
{
    SpatialOperator op;
    op.structure_ = Structure::toeplitz_kron_sum;
    op.size_ = 1;
    for (const auto& a : axes) {
        op.axis_sizes_.push_back(a.size());
        op.size_ *= a.size();
    }
    op.axes_ = std::move(axes);
    return op;
}

SpatialOperator SpatialOperator::stencil(std::size_t n1, std::size_t n2, Vector diag, Vector east, Vector north)
{
    const std::size_t total = n1 * n2;
    require_size(diag.size(), total, "SpatialOperator::stencil diag");
    require_size(east.size(), total, "SpatialOperator::stencil east");
    require_size(north.size(), total, "SpatialOperator::stencil north");
    SpatialOperator op;
    op.structure_ = Structure::sparse_stencil;
    op.size_ = total;
    op.axis_sizes_ = {n1, n2};
    op.diag_ = std::move(diag);
    op.east_ = std::move(east);
    op.north_ = std::move(north);
    return op;
}

void SpatialOperator::apply(std::span<const double> x, std::span<double> out) const
{
    apply_columns(x, out, 1);
}

void SpatialOperator::apply_axis_dense(std::size_t axis, const double* in, double* out, std::size_t cols) const
{
    const auto& op = axes_[axis];
    const std::size_t na = op.size();
    std::size_t stride = 1;
    for (std::size_t k = axis + 1; k < axis_sizes_.size(); ++k) {
        stride *= axis_sizes_[k];
    }
    const std::size_t outer = size_ / (na * stride);

    if (na <= kDenseAxisLimit) {
        Vector dense(na * na);
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t k = 0; k < na; ++k) {
                dense[i * na + k] = op.entry(i, k);
            }
        }
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = o * na * stride + inner;
                for (std::size_t i = 0; i < na; ++i) {
                    double* dst = out + (base + i * stride) * cols;
                    for (std::size_t k = 0; k < na; ++k) {
                        const double g = dense[i * na + k];
                        if (g == 0.0) continue;
                        const double* src = in + (base + k * stride) * cols;
                        for (std::size_t c = 0; c < cols; ++c) {
                            dst[c] += g * src[c];
                        }
                    }
                }
            }
        }
        return;
    }

    Vector line(na);
    Vector result(na);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = o * na * stride + inner;
            for (std::size_t c = 0; c < cols; ++c) {
                for (std::size_t i = 0; i < na; ++i) {
                    line[i] = in[(base + i * stride) * cols + c];
                }
                apply_riesz_1d(op, line, result);
                for (std::size_t i = 0; i < na; ++i) {
                    out[(base + i * stride) * cols + c] += result[i];
                }
            }
        }
    }
}

void SpatialOperator::apply_columns(std::span<const double> in, std::span<double> out, std::size_t cols) const
{
    require_size(in.size(), size_ * cols, "SpatialOperator::apply");
    require_size(out.size(), size_ * cols, "SpatialOperator::apply (output)");
    std::fill(out.begin(), out.end(), 0.0);

    if (structure_ == Structure::toeplitz_kron_sum) {
        for (std::size_t axis = 0; axis < axes_.size(); ++axis) {
            apply_axis_dense(axis, in.data(), out.data(), cols);
        }
        return;
    }

    const std::size_t n1 = axis_sizes_[0];
    const std::size_t n2 = axis_sizes_[1];
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            const std::size_t s = i1 * n2 + i2;
            double* dst = out.data() + s * cols;
            const double* src = in.data() + s * cols;
            const double d = diag_[s];
            for (std::size_t c = 0; c < cols; ++c) {
                dst[c] = d * src[c];
            }
            auto couple = [&](std::size_t t, double w) {
                const double* nb = in.data() + t * cols;
                for (std::size_t c = 0; c < cols; ++c) {
                    dst[c] -= w * nb[c];
                }
            };
            if (i1 + 1 < n1) couple(s + n2, east_[s]);
            if (i1 > 0) couple(s - n2, east_[s - n2]);
            if (i2 + 1 < n2) couple(s + 1, north_[s]);
            if (i2 > 0) couple(s - 1, north_[s - 1]);
        }
    }
}

AllAtOnceOperator::AllAtOnceOperator(std::shared_ptr<const SpatialOperator> g, Vector q_col, int workers)
    : g_(std::move(g)), q_col_(std::move(q_col)), q_(q_col_), workers_(std::max(1, workers))
{
}

void AllAtOnceOperator::apply(std::span<const double> u, std::span<double> out) const
{
    const std::size_t m = time_steps();
    const std::size_t n = spatial_size();
    require_size(u.size(), m * n, "apply_all_at_once");
    require_size(out.size(), m * n, "apply_all_at_once (output)");

    g_->apply_columns(u, out, m);

    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel num_threads(workers_)
    {
        Vector tmp(m);
        std::vector<double> work;
#pragma omp for schedule(static)
        for (std::ptrdiff_t s = 0; s < count; ++s) {
            const auto offset = static_cast<std::size_t>(s) * m;
            q_.apply(u.subspan(offset, m), tmp, work);
            for (std::size_t k = 0; k < m; ++k) {
                out[offset + k] += tmp[k];
            }
        }
    }
}

Vector frac_centered_weights(double alpha, std::size_t n)
{
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        std::ostringstream os;
        os << "frac_centered_weights: alpha must lie in (1, 2], got " << alpha;
        throw InvalidSpecError(os.str());
    }
    Vector g(n + 1);
    const double half = 0.5 * alpha;
    const double g0 = std::tgamma(alpha + 1.0) / std::pow(std::tgamma(half + 1.0), 2);
    g[0] = g0;
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        g[k + 1] = g[k] * (kk - half) / (kk + 1.0 + half);
    }
    return g;
}

RieszOperator1D riesz_operator_1d(double alpha, std::size_t n, double h, FractionalScheme scheme)
{
    if (n < 1) {
        throw InvalidSpecError("riesz_operator_1d: n must be >= 1");
    }
    if (!(h > 0.0)) {
        throw InvalidSpecError("riesz_operator_1d: h must be positive");
    }
    const Vector w = frac_centered_weights(alpha, n);
    const double scale = 1.0 / std::pow(h, alpha);

    if (scheme == FractionalScheme::cd2) {
        Vector col(n);
        for (std::size_t k = 0; k < n; ++k) {
            col[k] = scale * w[k];
        }
        return {SymmetricToeplitz(std::move(col)), {}};
    }

    // hoc4: (1/h^alpha) * 1/2 (Q W + W Q), Q = I + c tridiag(-1, 2, -1).
    const double c = alpha / 24.0;
    auto wk = [&](std::ptrdiff_t k) { return w[static_cast<std::size_t>(std::abs(k))]; };
    Vector col(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<std::ptrdiff_t>(k);
        const double kw = 2.0 * wk(kk) - wk(kk - 1) - wk(kk + 1);
        col[k] = scale * (w[k] + c * kw);
    }
    Vector edge(n);
    for (std::size_t j = 0; j < n; ++j) {
        edge[j] = scale * 0.5 * c * w[j + 1];
    }
    return {SymmetricToeplitz(std::move(col)), std::move(edge)};
}

SpatialOperator variable_laplacian_2d(const ProblemSpec& spec)
{
    if (spec.kind != OperatorKind::variable_laplacian || spec.dim() != 2) {
        throw InvalidSpecError("variable_laplacian_2d: spec must be a 2-D variable_laplacian problem");
    }
    const std::size_t n1 = spec.n[0];
    const std::size_t n2 = spec.n[1];
    const double h1 = spec.h(0);
    const double h2 = spec.h(1);
    const double inv1 = 1.0 / (h1 * h1);
    const double inv2 = 1.0 / (h2 * h2);

    auto a = [&](double x1, double x2) {
        const double p[2] = {x1, x2};
        const double v = spec.coeff_a(p);
        if (!(v > 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "invalid coefficient: a(" << x1 << ", " << x2 << ") = " << v << " is not positive";
            throw InvalidSpecError(os.str());
        }
        return v;
    };

    Vector diag(n1 * n2), east(n1 * n2, 0.0), north(n1 * n2, 0.0);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const double x1 = spec.node(0, i1);
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            const double x2 = spec.node(1, i2);
            const std::size_t s = i1 * n2 + i2;
            const double ae = a(x1 + 0.5 * h1, x2);
            const double aw = a(x1 - 0.5 * h1, x2);
            const double an = a(x1, x2 + 0.5 * h2);
            const double as = a(x1, x2 - 0.5 * h2);
            diag[s] = (ae + aw) * inv1 + (an + as) * inv2;
            east[s] = ae * inv1;
            north[s] = an * inv2;
        }
    }
    return SpatialOperator::stencil(n1, n2, std::move(diag), std::move(east), std::move(north));
}

std::shared_ptr<const SpatialOperator> build_spatial_operator(const ProblemSpec& spec)
{
    spec.validate();
    if (spec.kind == OperatorKind::variable_laplacian) {
        return std::make_shared<const SpatialOperator>(variable_laplacian_2d(spec));
    }
    std::vector<RieszOperator1D> axes;
    for (std::size_t i = 0; i < spec.dim(); ++i) {
        RieszOperator1D op = riesz_operator_1d(spec.alpha[i], spec.n[i], spec.h(i), spec.scheme);
        // Fold K_i into the factor.
        Vector col(op.toeplitz.first_col().begin(), op.toeplitz.first_col().end());
        for (double& v : col) v *= spec.diffusivity[i];
        for (double& v : op.edge) v *= spec.diffusivity[i];
        axes.push_back({SymmetricToeplitz(std::move(col)), std::move(op.edge)});
    }
    return std::make_shared<const SpatialOperator>(SpatialOperator::kron_sum(std::move(axes)));
}

Vector q_theta_first_column(double theta, double dt, std::size_t m)
{
    if (!(theta >= 0.5 && theta <= 1.0)) {
        std::ostringstream os;
        os << "theta must lie in [1/2, 1], got " << theta;
        throw InvalidSpecError(os.str());
    }
    if (!(dt > 0.0)) {
        throw InvalidSpecError("q_theta_first_column: dt must be positive");
    }
    if (m < 1) {
        throw InvalidSpecError("q_theta_first_column: M must be >= 1");
    }
    Vector col(m, 0.0);
    col[0] = 1.0;
    if (m > 1) {
        col[1] = -1.0;
    }
    bidiagonal_forward_solve_inplace(theta * dt, (1.0 - theta) * dt, col);
    return col;
}

Vector time_space_permute(std::span<const double> v, std::size_t m, std::size_t n, Layout from)
{
    if (v.size() != m * n) {
        throw DimensionError("time_space_permute: length " + std::to_string(v.size()) + " is not M*N = " +
                             std::to_string(m * n));
    }
    Vector out(v.size());
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            if (from == Layout::time_major) {
                out[s * m + t] = v[t * n + s];
            } else {
                out[t * n + s] = v[s * m + t];
            }
        }
    }
    return out;
}

Vector assemble_rhs(const ProblemSpec& spec, const SpatialOperator& g)
{
    spec.validate();
    const std::size_t m = spec.time_steps;
    const std::size_t n = spec.spatial_size();
    require_size(g.size(), n, "assemble_rhs: spatial operator");
    const double dt = spec.dt();
    const double theta = spec.theta;

    Vector x(spec.dim());
    Vector u0(n);
    for (std::size_t s = 0; s < n; ++s) {
        spec.coordinates(s, x);
        u0[s] = spec.initial_psi(x);
    }
    Vector gu0(n);
    g.apply(u0, gu0);

    // Time-major f~: block m holds dt * f at t = (m - 1 + theta) dt, and block 1
    // additionally carries (I - (1 - theta) dt G) u^0.
    Vector rhs(m * n);
    for (std::size_t t = 0; t < m; ++t) {
        const double time = (static_cast<double>(t) + theta) * dt;
        for (std::size_t s = 0; s < n; ++s) {
            spec.coordinates(s, x);
            rhs[t * n + s] = dt * spec.source_f(x, time);
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        rhs[s] += u0[s] - (1.0 - theta) * dt * gu0[s];
    }

    Vector f = time_space_permute(rhs, m, n, Layout::time_major);
    for (std::size_t s = 0; s < n; ++s) {
        bidiagonal_forward_solve_inplace(theta * dt, (1.0 - theta) * dt, std::span<double>(f).subspan(s * m, m));
    }
    return f;
}

AllAtOnceOperator build_all_at_once(const ProblemSpec& spec, int workers)
{
    auto g = build_spatial_operator(spec);
    return AllAtOnceOperator(std::move(g), q_theta_first_column(spec.theta, spec.dt(), spec.time_steps), workers);
}

Vector apply_all_at_once(const AllAtOnceOperator& a, std::span<const double> u)
{
    Vector out(a.size());
    a.apply(u, out);
    return out;
}

Vector sample_exact_solution(const ProblemSpec& spec)
{
    if (!spec.exact_u) {
        throw InvalidSpecError("problem '" + spec.name + "' has no exact solution");
    }
    const std::size_t m = spec.time_steps;
    const std::size_t n = spec.spatial_size();
    const double dt = spec.dt();
    Vector x(spec.dim());
    Vector u(m * n);
    for (std::size_t s = 0; s < n; ++s) {
        spec.coordinates(s, x);
        for (std::size_t t = 0; t < m; ++t) {
            u[s * m + t] = spec.exact_u(x, static_cast<double>(t + 1) * dt);
        }
    }
    return u;
}

} // namespace pint

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

#include "pint/preconditioner.hpp"

#include "pint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace pint {

namespace {

// Prepared FFT symbols for the D_i^{-1} are kept only below this many bytes;
// above it the cached columns are transformed on every apply.
constexpr std::size_t kSymbolBudgetBytes = std::size_t{256} << 20;

// Lines of the tensorized DST handed to one task.
constexpr std::size_t kTransformChunk = 64;

double laplacian_mode(std::size_t j, std::size_t n, double h)
{
    const double c = std::cos(static_cast<double>(j + 1) * std::numbers::pi / static_cast<double>(n + 1));
    return (2.0 - 2.0 * c) / (h * h);
}

} // namespace

std::vector<Vector> preconditioner_axis_eigenvalues(const ProblemSpec& spec)
{
    spec.validate();
    std::vector<Vector> out;
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
        const std::size_t n = spec.n[axis];
        const double h = spec.h(axis);
        Vector lam(n);
        if (spec.kind == OperatorKind::variable_laplacian) {
            for (std::size_t j = 0; j < n; ++j) {
                lam[j] = laplacian_mode(j, n, h);
            }
        } else {
            const double alpha = spec.alpha[axis];
            const Vector w = frac_centered_weights(alpha, n);
            const TauEigenvalues tau = tau_eigenvalues(SymmetricToeplitz(Vector(w.begin(), w.begin() + n)));
            const double scale = spec.diffusivity[axis] / std::pow(h, alpha);
            for (std::size_t j = 0; j < n; ++j) {
                double v = tau.lambdas[j];
                if (spec.scheme == FractionalScheme::hoc4) {
                    v *= 1.0 + alpha / 24.0 * laplacian_mode(j, n, 1.0);
                }
                lam[j] = scale * v;
            }
        }
        out.push_back(std::move(lam));
    }
    return out;
}

Vector preconditioner_eigenvalues(const ProblemSpec& spec)
{
    const auto axes = preconditioner_axis_eigenvalues(spec);
    Vector lam{0.0};
    for (const auto& ax : axes) {
        Vector next;
        next.reserve(lam.size() * ax.size());
        for (double base : lam) {
            for (double v : ax) {
                next.push_back(base + v);
            }
        }
        lam = std::move(next);
    }
    return lam;
}

double assumption_lower_bound(const ProblemSpec& spec)
{
    if (spec.kind != OperatorKind::riesz_fractional) {
        throw InvalidSpecError("assumption_lower_bound: defined for riesz_fractional problems only");
    }
    spec.validate();
    double total = 0.0;
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
        const double alpha = spec.alpha[axis];
        const std::size_t n = spec.n[axis];
        const Vector w = frac_centered_weights(alpha, n);
        double partial = w[0];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t np = 1; np <= n; ++np) {
            if (np >= 2) {
                partial += 2.0 * w[np - 1];
            }
            best = std::min(best, std::pow(static_cast<double>(np + 1), alpha) * partial);
        }
        if (!(best > 0.0)) {
            throw NumericalError("assumption_lower_bound: scan produced a non-positive value");
        }
        total += spec.diffusivity[axis] / std::pow(spec.domain[axis].length(), alpha) * best;
    }
    return total;
}

SpectralBounds spectral_bounds_for(const ProblemSpec& spec)
{
    spec.validate();
    SpectralBounds b;
    if (spec.kind == OperatorKind::riesz_fractional) {
        if (spec.scheme == FractionalScheme::cd2) {
            b.a_min = 0.5;
            b.a_max = 1.5;
        } else {
            b.a_min = 0.375;
            b.a_max = 2.0;
        }
        b.p_min_eig_bound = assumption_lower_bound(spec);
        return b;
    }

    if (spec.coeff_range) {
        b.a_min = spec.coeff_range->first;
        b.a_max = spec.coeff_range->second;
    } else {
        // Sample the closed domain on a grid four times finer than the mesh.
        const std::size_t k1 = 4 * (spec.n[0] + 1);
        const std::size_t k2 = 4 * (spec.n[1] + 1);
        b.a_min = std::numeric_limits<double>::infinity();
        b.a_max = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i <= k1; ++i) {
            for (std::size_t j = 0; j <= k2; ++j) {
                const double x[2] = {
                    spec.domain[0].lo + spec.domain[0].length() * static_cast<double>(i) / static_cast<double>(k1),
                    spec.domain[1].lo + spec.domain[1].length() * static_cast<double>(j) / static_cast<double>(k2)};
                const double a = spec.coeff_a(x);
                b.a_min = std::min(b.a_min, a);
                b.a_max = std::max(b.a_max, a);
            }
        }
    }
    if (!(b.a_min > 0.0) || b.a_max < b.a_min) {
        throw InvalidSpecError("invalid coefficient: sampled range of a(x) is not positive");
    }
    b.p_min_eig_bound = 0.0;
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
        b.p_min_eig_bound += laplacian_mode(0, spec.n[axis], spec.h(axis));
    }
    return b;
}

double choose_omega(const SpectralBounds& bounds)
{
    return std::sqrt(bounds.a_min * bounds.a_max);
}

PintPreconditioner build_preconditioner(const ProblemSpec& spec, std::optional<double> omega, int workers)
{
    PintPreconditioner p;
    p.bounds_ = spectral_bounds_for(spec);
    p.omega_ = omega.value_or(choose_omega(p.bounds_));
    if (!(p.omega_ > 0.0) || !std::isfinite(p.omega_)) {
        throw InvalidSpecError("omega must be a positive finite number");
    }
    p.m_ = spec.time_steps;
    p.n_ = spec.spatial_size();
    p.axis_sizes_ = spec.n;
    for (std::size_t ni : spec.n) {
        p.plans_.emplace_back(ni);
    }
    p.lambdas_ = preconditioner_eigenvalues(spec);
    p.q_col_ = q_theta_first_column(spec.theta, spec.dt(), spec.time_steps);
    p.set_workers(workers);

    std::map<double, std::size_t> distinct;
    p.slot_.resize(p.n_);
    for (std::size_t i = 0; i < p.n_; ++i) {
        const double lam = p.lambdas_[i];
        if (!(lam > 0.0)) {
            throw NumericalError("preconditioner eigenvalue is not positive");
        }
        auto [it, inserted] = distinct.try_emplace(lam, distinct.size());
        p.slot_[i] = it->second;
    }
    Vector values(distinct.size());
    for (const auto& [lam, slot] : distinct) {
        values[slot] = lam;
    }

    const std::size_t m = p.m_;
    const auto count = static_cast<std::ptrdiff_t>(values.size());
    p.inv_cols_.assign(values.size() * m, 0.0);
#pragma omp parallel for schedule(dynamic, 8) num_threads(p.workers_)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        Vector col = p.q_col_;
        col[0] += p.omega_ * values[static_cast<std::size_t>(k)];
        const Vector inv = iltt_inverse_first_column(LowerToeplitz(std::move(col)));
        std::copy(inv.begin(), inv.end(), p.inv_cols_.begin() + k * static_cast<std::ptrdiff_t>(m));
    }

    const std::size_t symbol_bytes =
        m > kDirectThreshold ? (next_pow2(2 * m - 1) / 2 + 1) * sizeof(std::complex<double>) : 0;
    if (symbol_bytes * values.size() <= kSymbolBudgetBytes) {
        p.prepared_.resize(values.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(p.workers_)
        for (std::ptrdiff_t k = 0; k < count; ++k) {
            p.prepared_[static_cast<std::size_t>(k)] =
                PreparedLowerToeplitz(std::span<const double>(p.inv_cols_.data() + k * static_cast<std::ptrdiff_t>(m), m));
        }
    }
    return p;
}

void PintPreconditioner::transform_in_place(double* data) const
{
    const std::size_t m = m_;
    const std::size_t d = axis_sizes_.size();
    for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t na = axis_sizes_[axis];
        std::size_t stride = 1;
        for (std::size_t k = axis + 1; k < d; ++k) {
            stride *= axis_sizes_[k];
        }
        const std::size_t line_block = stride * m;  // lines sharing one outer index
        const std::size_t outer = n_ / (na * stride);
        const std::size_t chunk = std::min(line_block, kTransformChunk);
        const std::size_t chunks = (line_block + chunk - 1) / chunk;
        const auto tasks = static_cast<std::ptrdiff_t>(outer * chunks);
        const SineTransformPlan& plan = plans_[axis];
#pragma omp parallel for schedule(static) num_threads(workers_)
        for (std::ptrdiff_t t = 0; t < tasks; ++t) {
            const std::size_t o = static_cast<std::size_t>(t) / chunks;
            const std::size_t c0 = (static_cast<std::size_t>(t) % chunks) * chunk;
            const std::size_t cnt = std::min(chunk, line_block - c0);
            plan.apply_strided(data + o * na * line_block + c0, cnt, line_block, 1);
        }
    }
}

void PintPreconditioner::spatial_transform(std::span<const double> v, std::span<double> out) const
{
    require_size(v.size(), size(), "PintPreconditioner::spatial_transform");
    require_size(out.size(), size(), "PintPreconditioner::spatial_transform (output)");
    if (out.data() != v.data()) {
        std::copy(v.begin(), v.end(), out.begin());
    }
    transform_in_place(out.data());
}

void PintPreconditioner::apply_blocks(std::span<double> data, BlockOp op) const
{
    const std::size_t m = m_;
    const auto count = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel num_threads(workers_)
    {
        Vector x(m);
        std::vector<double> work;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto mode = static_cast<std::size_t>(i);
            std::span<double> block = data.subspan(mode * m, m);
            const double root = std::sqrt(omega_ * lambdas_[mode]);
            if (op == BlockOp::scale_down || op == BlockOp::scale_up) {
                const double f = op == BlockOp::scale_up ? root : 1.0 / root;
                for (double& v : block) v *= f;
                continue;
            }
            std::copy(block.begin(), block.end(), x.begin());
            const std::size_t slot = slot_[mode];
            if (!prepared_.empty()) {
                prepared_[slot].apply(x, block, work);
            } else {
                const LowerToeplitz inv(Vector(inv_cols_.begin() + static_cast<std::ptrdiff_t>(slot * m),
                                               inv_cols_.begin() + static_cast<std::ptrdiff_t>((slot + 1) * m)));
                const Vector y = lower_toeplitz_matvec(inv, x);
                std::copy(y.begin(), y.end(), block.begin());
            }
            if (op == BlockOp::scaled_inverse) {
                for (double& v : block) v *= root;
            }
        }
    }
}

void PintPreconditioner::apply_pinv(std::span<const double> v, std::span<double> out) const
{
    spatial_transform(v, out);
    apply_blocks(out, BlockOp::inverse);
    transform_in_place(out.data());
}

void PintPreconditioner::apply_two_sided(std::span<const double> v, std::span<double> out, TwoSidedOp which) const
{
    spatial_transform(v, out);
    switch (which) {
    case TwoSidedOp::l_inv: apply_blocks(out, BlockOp::scaled_inverse); break;
    case TwoSidedOp::r_inv: apply_blocks(out, BlockOp::scale_down); break;
    case TwoSidedOp::r_fwd: apply_blocks(out, BlockOp::scale_up); break;
    }
    transform_in_place(out.data());
}

Vector apply_pinv(const PintPreconditioner& p, std::span<const double> v)
{
    Vector out(p.size());
    p.apply_pinv(v, out);
    return out;
}

Vector apply_two_sided(const PintPreconditioner& p, std::span<const double> v, TwoSidedOp which)
{
    Vector out(p.size());
    p.apply_two_sided(v, out, which);
    return out;
}

} // namespace pint

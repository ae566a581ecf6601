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

#include "pint/verification.hpp"

#include "pint/errors.hpp"
#include "pint/krylov.hpp"
#include "pint/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace pint {

namespace {

using Eigen::VectorXd;

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b)
{
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DenseMatrix identity(std::size_t n) { return DenseMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

DenseMatrix kron_sum(const std::vector<DenseMatrix>& axes)
{
    DenseMatrix out = DenseMatrix::Zero(1, 1);
    for (const auto& g : axes) {
        out = kron(out, identity(static_cast<std::size_t>(g.rows()))) + kron(identity(static_cast<std::size_t>(out.rows())), g);
    }
    return out;
}

DenseMatrix second_difference(std::size_t n)
{
    DenseMatrix k = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        k(i, i) = 2.0;
        if (i + 1 < k.rows()) {
            k(i, i + 1) = -1.0;
            k(i + 1, i) = -1.0;
        }
    }
    return k;
}

DenseMatrix toeplitz_dense(const Vector& t, std::size_t n)
{
    DenseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t[i > j ? i - j : j - i];
        }
    }
    return m;
}

// tau(T) = T - H, H Hankel with first column (t_2, ..., t_{n-1}, 0, 0) and last
// column (0, 0, t_{n-1}, ..., t_2).
DenseMatrix tau_dense(const Vector& t, std::size_t n)
{
    DenseMatrix m = toeplitz_dense(t, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i + j;
            double h = 0.0;
            if (k + 2 < n) {
                h = t[k + 2];
            } else if (k >= n + 1) {
                h = t[2 * n - k];
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -= h;
        }
    }
    return m;
}

void guard(std::size_t size, std::size_t limit, const std::string& what)
{
    if (size > limit) {
        throw SizeGuardError(what + ": dense size " + std::to_string(size) + " exceeds the limit " +
                             std::to_string(limit));
    }
}

// Symmetric function of a SPD matrix via its eigendecomposition.
template <class F>
DenseMatrix spd_function(const DenseMatrix& p, F f)
{
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(p);
    VectorXd d = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double max_abs(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

VectorXd to_eigen(std::span<const double> v)
{
    return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

TheoremReport make(std::string name, double tol)
{
    TheoremReport r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.pass = true;
    return r;
}

void fail(TheoremReport& r, const std::string& why)
{
    r.pass = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += why;
}

} // namespace

DenseMatrix dense_spatial_operator(const ProblemSpec& spec)
{
    spec.validate();
    guard(spec.spatial_size(), kDenseLimit, "dense_spatial_operator");
    if (spec.kind == OperatorKind::variable_laplacian) {
        const std::size_t n1 = spec.n[0], n2 = spec.n[1];
        const double h1 = spec.h(0), h2 = spec.h(1);
        auto a = [&](double x, double y) {
            const double p[2] = {x, y};
            return spec.coeff_a(p);
        };
        const auto total = static_cast<Eigen::Index>(n1 * n2);
        DenseMatrix g = DenseMatrix::Zero(total, total);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                const double x = spec.node(0, i), y = spec.node(1, j);
                const auto s = static_cast<Eigen::Index>(i * n2 + j);
                const double ae = a(x + h1 / 2, y) / (h1 * h1), aw = a(x - h1 / 2, y) / (h1 * h1);
                const double an = a(x, y + h2 / 2) / (h2 * h2), as = a(x, y - h2 / 2) / (h2 * h2);
                g(s, s) = ae + aw + an + as;
                if (i + 1 < n1) g(s, s + static_cast<Eigen::Index>(n2)) = -ae;
                if (i > 0) g(s, s - static_cast<Eigen::Index>(n2)) = -aw;
                if (j + 1 < n2) g(s, s + 1) = -an;
                if (j > 0) g(s, s - 1) = -as;
            }
        }
        return g;
    }
    std::vector<DenseMatrix> axes;
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
        const std::size_t n = spec.n[axis];
        const double alpha = spec.alpha[axis];
        DenseMatrix w = toeplitz_dense(frac_centered_weights(alpha, n), n) / std::pow(spec.h(axis), alpha);
        if (spec.scheme == FractionalScheme::hoc4) {
            const DenseMatrix q = identity(n) + alpha / 24.0 * second_difference(n);
            w = 0.5 * (q * w + w * q);
        }
        axes.push_back(spec.diffusivity[axis] * w);
    }
    return kron_sum(axes);
}

DenseMatrix dense_preconditioner_base(const ProblemSpec& spec)
{
    spec.validate();
    guard(spec.spatial_size(), kDenseLimit, "dense_preconditioner_base");
    std::vector<DenseMatrix> axes;
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
        const std::size_t n = spec.n[axis];
        const double h = spec.h(axis);
        if (spec.kind == OperatorKind::variable_laplacian) {
            axes.push_back(second_difference(n) / (h * h));
            continue;
        }
        const double alpha = spec.alpha[axis];
        DenseMatrix t = tau_dense(frac_centered_weights(alpha, n), n) / std::pow(h, alpha);
        if (spec.scheme == FractionalScheme::hoc4) {
            t = (identity(n) + alpha / 24.0 * second_difference(n)) * t;
        }
        axes.push_back(spec.diffusivity[axis] * t);
    }
    return kron_sum(axes);
}

DenseMatrix dense_q_theta(double theta, double dt, std::size_t m)
{
    guard(m, kDenseLimit, "dense_q_theta");
    const auto mm = static_cast<Eigen::Index>(m);
    DenseMatrix h = DenseMatrix::Zero(mm, mm), t = DenseMatrix::Zero(mm, mm);
    for (Eigen::Index i = 0; i < mm; ++i) {
        h(i, i) = theta * dt;
        t(i, i) = 1.0;
        if (i > 0) {
            h(i, i - 1) = (1.0 - theta) * dt;
            t(i, i - 1) = -1.0;
        }
    }
    return h.triangularView<Eigen::Lower>().solve(t);
}

DenseMatrix dense_kms(double rho, std::size_t m)
{
    guard(m, kDenseTimeLimit, "dense_kms");
    const auto mm = static_cast<Eigen::Index>(m);
    DenseMatrix k(mm, mm);
    for (Eigen::Index i = 0; i < mm; ++i) {
        for (Eigen::Index j = 0; j < mm; ++j) {
            k(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
        }
    }
    return k;
}

DenseMatrix dense_assemble(const ProblemSpec& spec, DenseWhich which, std::optional<double> omega)
{
    spec.validate();
    const std::size_t m = spec.time_steps;
    if (which == DenseWhich::B_theta || which == DenseWhich::KMS) {
        guard(m, kDenseTimeLimit, "dense_assemble");
        if (which == DenseWhich::KMS) {
            return dense_kms((spec.theta - 1.0) / spec.theta, m);
        }
        const DenseMatrix q = dense_q_theta(spec.theta, spec.dt(), m);
        return q + q.transpose();
    }
    guard(m * spec.spatial_size(), kDenseLimit, "dense_assemble");
    const DenseMatrix q = dense_q_theta(spec.theta, spec.dt(), m);
    const DenseMatrix im = identity(m);
    if (which == DenseWhich::A) {
        return kron(dense_spatial_operator(spec), im) + kron(identity(spec.spatial_size()), q);
    }
    const double w = omega.value_or(choose_omega(spectral_bounds_for(spec)));
    const DenseMatrix p = dense_preconditioner_base(spec);
    switch (which) {
    case DenseWhich::P_omega:
        return kron(w * p, im) + kron(identity(spec.spatial_size()), q);
    case DenseWhich::P_l:
        return kron(spd_function(p, [w](double l) { return std::sqrt(w * l); }), im) +
               kron(spd_function(p, [w](double l) { return 1.0 / std::sqrt(w * l); }), q);
    default:
        return kron(spd_function(p, [w](double l) { return std::sqrt(w * l); }), im);
    }
}

double nu_bound(double a_min, double a_max, double omega, double theta)
{
    double hi = std::max(a_max / omega, omega / a_min);
    double lo = std::min(a_min / omega, omega / a_max);
    if (theta > 0.5) {
        hi = std::max(hi, 1.0);
        lo = std::min(lo, 1.0);
    }
    return std::sqrt(a_max * hi / (a_min * lo));
}

double kms_symbol(double rho, double phi)
{
    if (!(std::abs(rho) < 1.0)) {
        throw InvalidSpecError("kms_symbol: |rho| must be < 1");
    }
    return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(phi) + rho * rho);
}

TheoremReport check_btheta_psd(const std::vector<double>& thetas, const std::vector<std::size_t>& ms)
{
    TheoremReport r = make("btheta_psd", 1e-10);
    double worst_min = std::numeric_limits<double>::infinity();
    double worst_closed = 0.0;
    double worst_rank_one = 0.0;
    for (double theta : thetas) {
        for (std::size_t m : ms) {
            guard(m, kDenseTimeLimit, "check_btheta_psd");
            const DenseMatrix q = dense_q_theta(theta, 1.0, m);
            const DenseMatrix b = q + q.transpose();
            Eigen::SelfAdjointEigenSolver<DenseMatrix> es(b, Eigen::EigenvaluesOnly);
            const VectorXd ev = es.eigenvalues();
            worst_min = std::min(worst_min, ev.minCoeff());
            if (ev.minCoeff() < -1e-10) {
                fail(r, "min eig " + fmt(ev.minCoeff()) + " at theta=" + fmt(theta) + ", M=" + std::to_string(m));
            }
            if (theta == 1.0) {
                std::vector<double> closed;
                for (std::size_t k = 1; k <= m; ++k) {
                    closed.push_back(2.0 + 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(m + 1)));
                }
                std::sort(closed.begin(), closed.end());
                for (std::size_t k = 0; k < m; ++k) {
                    worst_closed = std::max(worst_closed, std::abs(closed[k] - ev[static_cast<Eigen::Index>(k)]));
                }
                if (worst_closed > 1e-10) {
                    fail(r, "closed-form spectrum mismatch at M=" + std::to_string(m));
                }
            }
            if (theta == 0.5) {
                const double top = ev[ev.size() - 1];
                const double rel = std::abs(top - 4.0 * static_cast<double>(m)) / (4.0 * static_cast<double>(m));
                double rest = 0.0;
                for (Eigen::Index k = 0; k + 1 < ev.size(); ++k) {
                    rest = std::max(rest, std::abs(ev[k]));
                }
                worst_rank_one = std::max(worst_rank_one, std::max(rel, rest));
                if (rel > 1e-8 || rest > 1e-10) {
                    fail(r, "rank-one structure violated at M=" + std::to_string(m));
                }
            }
        }
    }
    r.quantities = {{"min_eigenvalue", worst_min},
                    {"closed_form_error", worst_closed},
                    {"rank_one_error", worst_rank_one}};
    return r;
}

TheoremReport check_condition_bound(const ProblemSpec& spec, const std::vector<double>& omegas)
{
    TheoremReport r = make("condition_bound:" + spec.name, 1e-8);
    guard(spec.time_steps * spec.spatial_size(), kDenseLimit, "check_condition_bound");
    const SpectralBounds b = spectral_bounds_for(spec);
    const double opt = choose_omega(b);
    const DenseMatrix a = dense_assemble(spec, DenseWhich::A);
    for (double w : omegas) {
        const DenseMatrix pl = dense_assemble(spec, DenseWhich::P_l, w);
        const DenseMatrix pr = dense_assemble(spec, DenseWhich::P_r, w);
        const DenseMatrix left = pl.partialPivLu().solve(a);
        const DenseMatrix sys = pr.transpose().partialPivLu().solve(left.transpose()).transpose();
        Eigen::BDCSVD<DenseMatrix> svd(sys);
        const VectorXd sv = svd.singularValues();
        const double kappa = sv[0] / sv[sv.size() - 1];
        const double nu = nu_bound(b.a_min, b.a_max, w, spec.theta);
        r.quantities.push_back({"kappa@omega=" + fmt(w), kappa});
        r.quantities.push_back({"nu@omega=" + fmt(w), nu});
        if (!(kappa <= nu + 1e-8)) {
            fail(r, "kappa " + fmt(kappa) + " > nu " + fmt(nu) + " at omega=" + fmt(w));
        }
        if (std::abs(w - opt) <= 1e-12 * opt && !(kappa <= b.a_max / b.a_min + 1e-8)) {
            fail(r, "kappa " + fmt(kappa) + " > a_max/a_min at the optimal omega");
        }
    }
    return r;
}

TheoremReport check_residual_relation(const ProblemSpec& spec, std::optional<double> omega)
{
    TheoremReport r = make("residual_relation:" + spec.name, 1e-12);
    const std::size_t size = spec.time_steps * spec.spatial_size();
    guard(size, kDenseLimit, "check_residual_relation");

    const AllAtOnceOperator a = build_all_at_once(spec);
    const PintPreconditioner p = build_preconditioner(spec, omega);
    Vector b = assemble_rhs(spec, a.spatial());
    const double bn = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    if (bn > 0.0) {
        for (double& v : b) v /= bn;
    }

    GmresConfig cfg;
    cfg.restart = size;
    cfg.maxit = 1;
    cfg.rtol = 1e-10;
    cfg.reorthogonalize = true;

    const LinearMap apply_a = [&](std::span<const double> x, std::span<double> y) { a.apply(x, y); };
    const LinearMap apply_p = [&](std::span<const double> x, std::span<double> y) { p.apply_pinv(x, y); };
    const GmresResult one = gmres_solve(apply_a, apply_p, b, {}, cfg);

    Vector tmp(size), tmp2(size);
    const LinearMap two_sided = [&](std::span<const double> x, std::span<double> y) {
        p.apply_two_sided(x, tmp, TwoSidedOp::r_inv);
        a.apply(tmp, tmp2);
        p.apply_two_sided(tmp2, y, TwoSidedOp::l_inv);
    };
    const Vector bhat = apply_two_sided(p, b, TwoSidedOp::l_inv);
    const GmresResult two = gmres_solve(two_sided, LinearMap{}, bhat, {}, cfg);

    const double c = 1.0 / std::sqrt(p.omega() * p.bounds().p_min_eig_bound);
    const auto& h1 = one.report.preconditioned_residual_history;
    const auto& h2 = two.report.preconditioned_residual_history;
    const std::size_t common = std::min(h1.size(), h2.size());
    double worst = -std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    for (std::size_t j = 0; j < common; ++j) {
        worst = std::max(worst, h1[j] - c * h2[j]);
        if (h2[j] > 0.0) max_ratio = std::max(max_ratio, h1[j] / h2[j]);
        if (h1[j] > c * h2[j] + 1e-12) {
            fail(r, "iteration " + std::to_string(j) + ": " + fmt(h1[j]) + " > c * " + fmt(h2[j]));
        }
    }
    r.quantities = {{"c", c},
                    {"max_ratio", max_ratio},
                    {"max_excess", worst},
                    {"iterations_compared", static_cast<double>(common)}};
    return r;
}

TheoremReport check_spectrum_inclusion(const ProblemSpec& spec)
{
    TheoremReport r = make("spectrum_inclusion:" + spec.name, 1e-9);
    guard(spec.spatial_size(), 1024, "check_spectrum_inclusion");
    const SpectralBounds b = spectral_bounds_for(spec);
    const DenseMatrix g = dense_spatial_operator(spec);
    const DenseMatrix p = dense_preconditioner_base(spec);
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(g, p, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    r.quantities = {{"eig_min", lo}, {"eig_max", hi}, {"a_min", b.a_min}, {"a_max", b.a_max}};
    if (lo < b.a_min - 1e-9 || hi > b.a_max + 1e-9) {
        fail(r, "spectrum [" + fmt(lo) + ", " + fmt(hi) + "] leaves [a_min, a_max]");
    }
    if (spec.kind == OperatorKind::riesz_fractional && !(lo > b.a_min && hi < b.a_max)) {
        fail(r, "spectrum not strictly inside the open interval");
    }
    return r;
}

TheoremReport check_kms_symbol(const std::vector<double>& rhos)
{
    TheoremReport r = make("kms_symbol", 1e-12);
    double worst = std::numeric_limits<double>::infinity();
    for (double rho : rhos) {
        const double floor = (1.0 + rho) / (1.0 - rho);
        double best = std::numeric_limits<double>::infinity();
        double arg = 0.0;
        constexpr int kGrid = 2000;
        for (int k = 0; k <= kGrid; ++k) {
            const double phi = std::numbers::pi * k / kGrid;
            const double s = kms_symbol(rho, phi);
            if (s < best) {
                best = s;
                arg = phi;
            }
        }
        worst = std::min(worst, best - floor);
        if (best - floor < -1e-12) {
            fail(r, "symbol below (1+rho)/(1-rho) for rho=" + fmt(rho));
        }
        if (rho < 0.0 && arg != 0.0) {
            fail(r, "minimum not attained at phi=0 for rho=" + fmt(rho));
        }
    }
    r.quantities = {{"min_margin", worst}};
    return r;
}

TheoremReport check_quotient_bounds(std::uint64_t seed)
{
    TheoremReport r = make("quotient_bounds", 1e-12);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(0.01, 10.0);
    std::uniform_int_distribution<int> len(1, 20);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        const int n = len(rng);
        double sx = 0.0, sz = 0.0, qmin = 1e300, qmax = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = val(rng), zi = val(rng);
            sx += xi;
            sz += zi;
            qmin = std::min(qmin, xi / zi);
            qmax = std::max(qmax, xi / zi);
        }
        const double q = sx / sz;
        const double margin = std::min(q - qmin, qmax - q) / qmax;
        worst = std::min(worst, margin);
        if (margin < -1e-12) {
            fail(r, "trial " + std::to_string(trial) + " violates the quotient bounds");
        }
    }
    r.quantities = {{"min_relative_margin", worst}};
    return r;
}

TheoremReport check_order_inversion(std::uint64_t seed)
{
    TheoremReport r = make("order_inversion", 1e-10);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> len(2, 32);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        const int n = len(rng);
        DenseMatrix c(n, n), d(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                c(i, j) = nd(rng);
                d(i, j) = nd(rng);
            }
        }
        const DenseMatrix b1 = c.transpose() * c + 0.1 * DenseMatrix::Identity(n, n);
        const DenseMatrix b2 = b1 + d.transpose() * d;
        DenseMatrix diff = b1.inverse() - b2.inverse();
        diff = 0.5 * (diff + diff.transpose());
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(diff, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        worst = std::min(worst, lo);
        if (lo < -1e-10) {
            fail(r, "trial " + std::to_string(trial) + ": min eig " + fmt(lo));
        }
    }
    r.quantities = {{"min_eigenvalue", worst}};
    return r;
}

TheoremReport check_march_equivalence(const ProblemSpec& spec)
{
    TheoremReport r = make("march_equivalence:" + spec.name, 1e-10);
    const std::size_t m = spec.time_steps, n = spec.spatial_size();
    guard(m * n, kDenseLimit, "check_march_equivalence");

    const auto g_fast = build_spatial_operator(spec);
    const Vector f = assemble_rhs(spec, *g_fast);
    const DenseMatrix a = dense_assemble(spec, DenseWhich::A);
    const VectorXd u_all = a.partialPivLu().solve(to_eigen(f));

    const DenseMatrix g = dense_spatial_operator(spec);
    const double dt = spec.dt(), theta = spec.theta;
    const DenseMatrix lhs = identity(n) + theta * dt * g;
    const DenseMatrix rhs_op = identity(n) - (1.0 - theta) * dt * g;
    const auto lu = lhs.partialPivLu();
    VectorXd u(static_cast<Eigen::Index>(n)), src(static_cast<Eigen::Index>(n));
    Vector x(spec.dim());
    for (std::size_t s = 0; s < n; ++s) {
        spec.coordinates(s, x);
        u[static_cast<Eigen::Index>(s)] = spec.initial_psi(x);
    }
    double diff = 0.0, scale = 1.0;
    for (std::size_t step = 0; step < m; ++step) {
        const double t = (static_cast<double>(step) + theta) * dt;
        for (std::size_t s = 0; s < n; ++s) {
            spec.coordinates(s, x);
            src[static_cast<Eigen::Index>(s)] = dt * spec.source_f(x, t);
        }
        u = lu.solve(rhs_op * u + src);
        for (std::size_t s = 0; s < n; ++s) {
            const double v = u_all[static_cast<Eigen::Index>(s * m + step)];
            diff = std::max(diff, std::abs(v - u[static_cast<Eigen::Index>(s)]));
            scale = std::max(scale, std::abs(v));
        }
    }
    r.quantities = {{"max_difference", diff}, {"scale", scale}};
    if (diff > 1e-10 * scale) {
        fail(r, "all-at-once and marched solutions differ by " + fmt(diff));
    }
    return r;
}

std::vector<TheoremReport> run_kernel_checks(std::uint64_t seed)
{
    std::vector<TheoremReport> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto random_vec = [&](std::size_t n) {
        Vector v(n);
        for (double& x : v) x = uni(rng);
        return v;
    };

    {
        TheoremReport r = make("dst_involution_isometry", 1e-12);
        double worst_inv = 0.0, worst_iso = 0.0;
        for (std::size_t n : {1, 3, 64, 1000, 4096}) {
            const SineTransformPlan plan(n);
            const Vector x = random_vec(n);
            const Vector sx = dst1_apply(plan, x);
            const Vector ssx = dst1_apply(plan, sx);
            const VectorXd ex = to_eigen(x);
            worst_inv = std::max(worst_inv, max_abs(to_eigen(ssx) - ex) / max_abs(ex));
            worst_iso = std::max(worst_iso, std::abs(to_eigen(sx).norm() - ex.norm()) / ex.norm());
        }
        r.quantities = {{"involution_error", worst_inv}, {"isometry_error", worst_iso}};
        if (worst_inv > 1e-12 || worst_iso > 1e-12) fail(r, "DST is not an orthogonal involution");
        out.push_back(r);
    }
    {
        TheoremReport r = make("iltt_inverse", 1e-12);
        double worst = 0.0;
        for (std::size_t m : {1, 2, 63, 64, 65, 1024, 65536}) {
            Vector l(m);
            l[0] = 2.0;
            for (std::size_t k = 1; k < m; ++k) {
                l[k] = uni(rng) / static_cast<double>((k + 1) * (k + 1));
            }
            const LowerToeplitz lt(l);
            const Vector v = iltt_inverse_first_column(lt);
            Vector lv = lower_toeplitz_matvec(lt, v);
            lv[0] -= 1.0;
            const double err = max_abs(to_eigen(lv)) / max_abs(to_eigen(v));
            worst = std::max(worst, err);
        }
        r.quantities = {{"relative_residual", worst}};
        if (worst > 1e-12) fail(r, "L v != e1");
        out.push_back(r);
    }
    {
        TheoremReport r = make("toeplitz_matvec", 1e-12);
        double worst = 0.0;
        for (std::size_t n : {1, 7, 64, 65, 200, 512}) {
            const Vector t = random_vec(n), x = random_vec(n);
            const Vector y = sym_toeplitz_matvec(SymmetricToeplitz(t), x);
            const DenseMatrix td = toeplitz_dense(t, n);
            const VectorXd yd = td * to_eigen(x);
            const VectorXd ref = td.cwiseAbs() * to_eigen(x).cwiseAbs();
            worst = std::max(worst, max_abs(to_eigen(y) - yd) / max_abs(ref));
        }
        for (std::size_t m : {10, 100, 300}) {
            const Vector l = random_vec(m), x = random_vec(m);
            const Vector yd = lower_toeplitz_matvec(LowerToeplitz(l), x, ProductPath::direct);
            const Vector yf = lower_toeplitz_matvec(LowerToeplitz(l), x, ProductPath::fft);
            worst = std::max(worst, max_abs(to_eigen(yd) - to_eigen(yf)) / max_abs(to_eigen(yd)));
        }
        r.quantities = {{"relative_error", worst}};
        if (worst > 1e-12) fail(r, "FFT product disagrees with the dense product");
        out.push_back(r);
    }
    {
        TheoremReport r = make("tau_eigenvalues", 1e-10);
        double worst = 0.0;
        for (std::size_t n : {3, 16, 64}) {
            const Vector w = frac_centered_weights(1.5, n);
            const Vector t(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
            Vector lam = tau_eigenvalues(SymmetricToeplitz(t)).lambdas;
            std::sort(lam.begin(), lam.end());
            Eigen::SelfAdjointEigenSolver<DenseMatrix> es(tau_dense(t, n), Eigen::EigenvaluesOnly);
            worst = std::max(worst, max_abs(to_eigen(lam) - es.eigenvalues()));
        }
        r.quantities = {{"max_error", worst}};
        if (worst > 1e-10) fail(r, "tau spectrum mismatch");
        out.push_back(r);
    }
    {
        TheoremReport r = make("h_theta_q_theta", 1e-12);
        double worst = 0.0;
        for (double theta : {0.5, 0.6, 0.75, 0.9, 1.0}) {
            for (std::size_t m : {1, 8, 128}) {
                const double dt = 1.0 / static_cast<double>(m);
                const Vector q = q_theta_first_column(theta, dt, m);
                const auto mm = static_cast<Eigen::Index>(m);
                DenseMatrix qd = DenseMatrix::Zero(mm, mm), h = DenseMatrix::Zero(mm, mm), t = DenseMatrix::Zero(mm, mm);
                for (Eigen::Index i = 0; i < mm; ++i) {
                    for (Eigen::Index j = 0; j <= i; ++j) qd(i, j) = q[static_cast<std::size_t>(i - j)];
                    h(i, i) = theta * dt;
                    t(i, i) = 1.0;
                    if (i > 0) {
                        h(i, i - 1) = (1.0 - theta) * dt;
                        t(i, i - 1) = -1.0;
                    }
                }
                worst = std::max(worst, (h * qd - t).cwiseAbs().maxCoeff());
            }
        }
        r.quantities = {{"max_error", worst}};
        if (worst > 1e-12) fail(r, "H_theta Q_theta != T");
        out.push_back(r);
    }
    {
        TheoremReport r = make("all_at_once_vs_dense", 1e-11);
        double worst = 0.0;
        const std::vector<ProblemSpec> specs = {ex1_case1(3, 4), riesz_problem({1.3, 1.7}, 4, 8, FractionalScheme::hoc4),
                                                ex1_case2(7, 16, 0.75)};
        for (const auto& spec : specs) {
            const AllAtOnceOperator a = build_all_at_once(spec);
            const DenseMatrix ad = dense_assemble(spec, DenseWhich::A);
            for (int probe = 0; probe < 20; ++probe) {
                const Vector u = random_vec(a.size());
                const Vector y = apply_all_at_once(a, u);
                const VectorXd yd = ad * to_eigen(u);
                const VectorXd ref = ad.cwiseAbs() * to_eigen(u).cwiseAbs();
                worst = std::max(worst, max_abs(to_eigen(y) - yd) / max_abs(ref));
            }
        }
        r.quantities = {{"relative_error", worst}};
        if (worst > 1e-11) fail(r, "matrix-free A disagrees with the dense Kronecker assembly");
        out.push_back(r);
    }
    {
        TheoremReport r = make("pinv_vs_dense", 1e-10);
        double worst = 0.0;
        const std::vector<ProblemSpec> specs = {ex1_case1(3, 4), riesz_problem({1.3, 1.7}, 4, 8, FractionalScheme::cd2),
                                                ex2(7, 16, 1.1, 1.2)};
        for (const auto& spec : specs) {
            const PintPreconditioner p = build_preconditioner(spec);
            const DenseMatrix pd = dense_assemble(spec, DenseWhich::P_omega, p.omega());
            for (int probe = 0; probe < 5; ++probe) {
                const Vector u = random_vec(p.size());
                const VectorXd pu = pd * to_eigen(u);
                const Vector back = apply_pinv(p, std::span<const double>(pu.data(), p.size()));
                worst = std::max(worst, max_abs(to_eigen(back) - to_eigen(u)) / max_abs(to_eigen(u)));
            }
        }
        r.quantities = {{"relative_error", worst}};
        if (worst > 1e-10) fail(r, "P_omega^{-1} P_omega u != u");
        out.push_back(r);
    }
    for (const auto& spec : {ex1_case1(7, 4), ex1_case2(7, 8, 0.75), riesz_problem({1.5}, 15, 16, FractionalScheme::cd2, 1.0),
                             ex2(7, 8, 1.4, 1.5)}) {
        out.push_back(check_march_equivalence(spec));
    }
    return out;
}

std::vector<TheoremReport> run_lemma_checks(std::uint64_t seed)
{
    std::vector<TheoremReport> out;
    out.push_back(check_btheta_psd({0.5, 0.55, 0.75, 0.9, 1.0}, {8, 64, 256}));
    out.push_back(check_kms_symbol({-0.99, -0.75, -0.5, -0.25, -0.1, 0.0}));
    out.push_back(check_quotient_bounds(seed));
    out.push_back(check_order_inversion(seed + 1));
    return out;
}

std::vector<TheoremReport> run_theorem_checks(std::uint64_t /*seed*/)
{
    std::vector<TheoremReport> out;
    for (double theta : {0.5, 0.75, 1.0}) {
        for (double alpha : {1.1, 1.5, 1.9}) {
            for (auto scheme : {FractionalScheme::cd2, FractionalScheme::hoc4}) {
                ProblemSpec spec = riesz_problem({alpha}, 15, 8, scheme, theta);
                spec.name += "_" + to_string(scheme) + "_theta" + fmt(theta) + "_alpha" + fmt(alpha);
                const double opt = choose_omega(spectral_bounds_for(spec));
                out.push_back(check_condition_bound(spec, {opt, 0.5 * opt, 2.0 * opt}));
            }
        }
        for (ProblemSpec spec : {ex1_case1(7, 8, theta), ex1_case2(7, 8, theta)}) {
            spec.name += "_theta" + fmt(theta);
            const double opt = choose_omega(spectral_bounds_for(spec));
            out.push_back(check_condition_bound(spec, {opt, 0.5 * opt, 2.0 * opt}));
        }
    }
    for (const auto& spec : {riesz_problem({1.5}, 15, 8, FractionalScheme::cd2), riesz_problem({1.1, 1.2}, 7, 8, FractionalScheme::hoc4),
                             ex1_case1(7, 8), ex1_case2(7, 8, 0.75)}) {
        out.push_back(check_residual_relation(spec));
    }
    for (double alpha : {1.1, 1.5, 1.9}) {
        for (auto scheme : {FractionalScheme::cd2, FractionalScheme::hoc4}) {
            ProblemSpec spec = riesz_problem({alpha}, 64, 1, scheme);
            spec.name += "_" + to_string(scheme) + "_alpha" + fmt(alpha);
            out.push_back(check_spectrum_inclusion(spec));
        }
    }
    out.push_back(check_spectrum_inclusion(ex1_case1(15, 1)));
    out.push_back(check_spectrum_inclusion(heat_problem(15, 1)));
    return out;
}

std::vector<TheoremReport> run_verification_suite(const std::string& suite, std::uint64_t seed)
{
    if (suite == "kernels") return run_kernel_checks(seed);
    if (suite == "lemmas") return run_lemma_checks(seed);
    if (suite == "theorems") return run_theorem_checks(seed);
    if (suite == "all") {
        auto out = run_kernel_checks(seed);
        for (auto* f : {&run_lemma_checks, &run_theorem_checks}) {
            auto more = f(seed);
            out.insert(out.end(), more.begin(), more.end());
        }
        return out;
    }
    throw InvalidSpecError("unknown verification suite '" + suite + "' (expected kernels, lemmas, theorems or all)");
}

} // namespace pint

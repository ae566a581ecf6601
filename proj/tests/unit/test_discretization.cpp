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
#include "pint/problems.hpp"
#include "pint/verification.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using pint::Vector;
using oracle::as_vec;

oracle::Mat dense_of(const pint::SpatialOperator& g)
{
    const auto n = static_cast<Eigen::Index>(g.size());
    oracle::Mat d(n, n);
    Vector e(g.size(), 0.0), col(g.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        g.apply(e, col);
        d.col(j) = as_vec(col);
        e[static_cast<std::size_t>(j)] = 0.0;
    }
    return d;
}

oracle::Mat dense_of(const pint::RieszOperator1D& op)
{
    const auto n = static_cast<Eigen::Index>(op.size());
    oracle::Mat d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) d(i, j) = op.entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return d;
}

TEST(FracWeights, AlphaTwoIsClassicalStencil)
{
    const Vector g = pint::frac_centered_weights(2.0, 4);
    EXPECT_NEAR(g[0], 2.0, 1e-15);
    EXPECT_NEAR(g[1], -1.0, 1e-15);
    EXPECT_NEAR(g[2], 0.0, 1e-15);
    EXPECT_NEAR(g[3], 0.0, 1e-15);
}

TEST(FracWeights, AlphaOnePointFiveFrozen)
{
    // 50-digit Gamma oracle: g0 = Gamma(2.5)/Gamma(1.75)^2.
    const Vector g = pint::frac_centered_weights(1.5, 1);
    EXPECT_NEAR(g[0], 1.5737874653547950, 1e-15);
    EXPECT_NEAR(g[1], -0.6744803422949121, 1e-15);
    EXPECT_NEAR(g[1], g[0] * (-0.75 / 1.75), 1e-15);
}

TEST(FracWeights, RecurrenceMatchesHighPrecisionGamma)
{
    for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        const Vector g = pint::frac_centered_weights(alpha, 20);
        for (int k = 0; k <= 20; ++k) {
            const double ref = oracle::frac_weight(alpha, k);
            EXPECT_NEAR(g[static_cast<std::size_t>(k)], ref, 1e-14 * std::abs(g[0])) << "alpha=" << alpha << " k=" << k;
        }
    }
}

TEST(FracWeights, SignsAndPartialSums)
{
    for (double alpha : {1.1, 1.5, 1.9}) {
        const Vector g = pint::frac_centered_weights(alpha, 10000);
        EXPECT_GT(g[0], 0.0);
        double partial = g[0], prev = 1e300;
        for (std::size_t k = 1; k < g.size(); ++k) {
            EXPECT_LT(g[k], 0.0);
            partial += 2 * g[k];
            EXPECT_GT(partial, 0.0);
            EXPECT_LT(partial, prev);
            prev = partial;
        }
        EXPECT_LT(partial, 1e-3) << "alpha=" << alpha;
    }
}

TEST(FracWeights, RejectsAlphaOutsideRange)
{
    EXPECT_THROW((void)pint::frac_centered_weights(1.0, 3), pint::InvalidSpecError);
    EXPECT_THROW((void)pint::frac_centered_weights(2.1, 3), pint::InvalidSpecError);
}

TEST(RieszOperator1D, Cd2AlphaTwo)
{
    const auto op = pint::riesz_operator_1d(2.0, 3, 1.0, pint::FractionalScheme::cd2);
    EXPECT_NEAR(op.toeplitz.first_col()[0], 2.0, 1e-10);
    EXPECT_NEAR(op.toeplitz.first_col()[1], -1.0, 1e-10);
    EXPECT_NEAR(op.toeplitz.first_col()[2], 0.0, 1e-10);
    EXPECT_TRUE(op.edge.empty());
}

TEST(RieszOperator1D, Cd2Scaling)
{
    const auto op = pint::riesz_operator_1d(1.5, 4, 0.5, pint::FractionalScheme::cd2);
    const double scale = 1.0 / std::pow(0.5, 1.5);
    for (int k = 0; k < 4; ++k)
        EXPECT_NEAR(op.toeplitz.first_col()[static_cast<std::size_t>(k)], scale * oracle::frac_weight(1.5, k), 1e-13);
}

TEST(RieszOperator1D, Hoc4MatchesSymmetrizedProduct)
{
    for (double alpha : {1.2, 1.7, 2.0}) {
        const std::size_t n = 8;
        const double h = 0.3;
        Vector w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = alpha == 2.0 ? (k == 0 ? 2.0 : k == 1 ? -1.0 : 0.0) : oracle::frac_weight(alpha, static_cast<int>(k));
        }
        const oracle::Mat wt = oracle::toeplitz(w) / std::pow(h, alpha);
        const oracle::Mat k2 = oracle::second_difference(n);
        const oracle::Mat ref = wt + alpha / 24.0 * 0.5 * (k2 * wt + wt * k2);
        const auto op = pint::riesz_operator_1d(alpha, n, h, pint::FractionalScheme::hoc4);
        EXPECT_LT((dense_of(op) - ref).cwiseAbs().maxCoeff(), 1e-12) << "alpha=" << alpha;
    }
}

TEST(RieszOperator1D, SymmetricPositiveDefinite)
{
    for (auto scheme : {pint::FractionalScheme::cd2, pint::FractionalScheme::hoc4}) {
        for (double alpha : {1.1, 1.5, 1.9}) {
            for (std::size_t n : {1, 16, 1024}) {
                const oracle::Mat d = dense_of(pint::riesz_operator_1d(alpha, n, 1.0 / (n + 1), scheme));
                EXPECT_EQ((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0);
                EXPECT_EQ(Eigen::LLT<oracle::Mat>(d).info(), Eigen::Success) << "n=" << n;
            }
        }
    }
}

TEST(RieszOperator1D, RejectsBadArguments)
{
    EXPECT_THROW((void)pint::riesz_operator_1d(1.5, 0, 0.1, pint::FractionalScheme::cd2), pint::InvalidSpecError);
    EXPECT_THROW((void)pint::riesz_operator_1d(1.5, 4, 0.0, pint::FractionalScheme::cd2), pint::InvalidSpecError);
    EXPECT_THROW((void)pint::riesz_operator_1d(0.5, 4, 0.1, pint::FractionalScheme::hoc4), pint::InvalidSpecError);
}

TEST(VariableLaplacian, ConstantCoefficientIsKroneckerSum)
{
    const auto spec = pint::heat_problem(3, 1);
    const oracle::Mat g = dense_of(pint::variable_laplacian_2d(spec));
    const oracle::Mat k = oracle::second_difference(3);
    const oracle::Mat id = oracle::Mat::Identity(3, 3);
    const oracle::Mat ref = (oracle::kron(k, id) + oracle::kron(id, k)) * 16.0;
    EXPECT_LT((g - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(VariableLaplacian, ExampleCoefficientsSymmetricSpd)
{
    for (const auto& spec : {pint::ex1_case1(7, 1), pint::ex1_case2(7, 1)}) {
        const oracle::Mat g = dense_of(pint::variable_laplacian_2d(spec));
        EXPECT_LT((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-12 * g.cwiseAbs().maxCoeff());
        EXPECT_EQ(Eigen::LLT<oracle::Mat>(g).info(), Eigen::Success);
    }
}

TEST(VariableLaplacian, NonPositiveCoefficientRejected)
{
    auto spec = pint::heat_problem(3, 1);
    spec.coeff_a = [](std::span<const double> x) { return x[0] - 0.5; };
    EXPECT_THROW((void)pint::variable_laplacian_2d(spec), pint::InvalidSpecError);
}

TEST(SpatialOperator, SymmetricOnRandomProbes)
{
    const std::vector<pint::ProblemSpec> specs = {pint::ex1_case1(9, 1), pint::ex2(9, 1, 1.1, 1.9),
                                                  pint::riesz_problem({1.4}, 300, 1, pint::FractionalScheme::hoc4)};
    for (const auto& spec : specs) {
        const auto g = pint::build_spatial_operator(spec);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Vector x = oracle::random_vector(g->size(), seed), y = oracle::random_vector(g->size(), seed + 50);
            Vector gx(g->size()), gy(g->size());
            g->apply(x, gx);
            g->apply(y, gy);
            const double lhs = as_vec(gx).dot(as_vec(y)), rhs = as_vec(x).dot(as_vec(gy));
            EXPECT_LE(std::abs(lhs - rhs), 1e-10 * as_vec(x).norm() * as_vec(y).norm() * g->size()) << spec.name;
        }
    }
}

TEST(SpatialOperator, DenseSpdAtModerateSize)
{
    const std::vector<pint::ProblemSpec> specs = {
        pint::ex1_case1(31, 1), pint::ex1_case2(31, 1), pint::ex2(32, 1, 1.1, 1.2, pint::FractionalScheme::hoc4),
        pint::ex2(32, 1, 1.8, 1.9, pint::FractionalScheme::cd2)};
    for (const auto& spec : specs) {
        const oracle::Mat g = dense_of(*pint::build_spatial_operator(spec));
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(g, Eigen::EigenvaluesOnly);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << spec.name;
    }
}

TEST(SpatialOperator, LargeAxisUsesFftPathConsistently)
{
    // n > 256 switches the axis product to FFT lines; compare with the entry formula.
    const auto spec = pint::riesz_problem({1.6}, 300, 1, pint::FractionalScheme::hoc4);
    const auto g = pint::build_spatial_operator(spec);
    const oracle::Mat d = dense_of(g->axes()[0]);
    const Vector x = oracle::random_vector(300, 3);
    Vector y(300);
    g->apply(x, y);
    const oracle::Vec ref = d * as_vec(x);
    EXPECT_LT(oracle::max_abs_diff(as_vec(y), ref) / ref.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(QTheta, BackwardEuler)
{
    const Vector q = pint::q_theta_first_column(1.0, 0.1, 4);
    EXPECT_NEAR(q[0], 10, 1e-12);
    EXPECT_NEAR(q[1], -10, 1e-12);
    EXPECT_NEAR(q[2], 0, 1e-12);
    EXPECT_NEAR(q[3], 0, 1e-12);
}

TEST(QTheta, CrankNicolsonUnitStep)
{
    const Vector q = pint::q_theta_first_column(0.5, 1.0, 4);
    const double want[] = {2, -4, 4, -4};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(q[static_cast<std::size_t>(i)], want[i], 1e-14);
}

TEST(QTheta, ClosedFormAndDenseProduct)
{
    for (double theta : {0.5, 0.6, 0.75, 0.9, 1.0}) {
        for (std::size_t m : {1, 2, 17, 128}) {
            const double dt = 1.0 / static_cast<double>(m);
            const Vector q = pint::q_theta_first_column(theta, dt, m);
            const Vector closed = oracle::q_closed_form(theta, dt, m);
            EXPECT_LT(oracle::max_abs_diff(as_vec(q), as_vec(closed)), 1e-12 * (1.0 / (theta * dt)));
            oracle::Mat h = oracle::Mat::Zero(m, m), t = oracle::Mat::Zero(m, m);
            for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
                h(i, i) = theta * dt;
                t(i, i) = 1;
                if (i > 0) {
                    h(i, i - 1) = (1 - theta) * dt;
                    t(i, i - 1) = -1;
                }
            }
            EXPECT_LT((h * oracle::lower_toeplitz(q) - t).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(QTheta, RejectsThetaBelowHalf)
{
    try {
        (void)pint::q_theta_first_column(0.3, 0.1, 4);
        FAIL() << "expected InvalidSpecError";
    } catch (const pint::InvalidSpecError& e) {
        EXPECT_NE(std::string(e.what()).find("[1/2, 1]"), std::string::npos);
    }
}

TEST(AssembleRhs, ZeroDataGivesZero)
{
    auto spec = pint::heat_problem(4, 3);
    spec.source_f = [](std::span<const double>, double) { return 0.0; };
    spec.initial_psi = [](std::span<const double>) { return 0.0; };
    const auto g = pint::build_spatial_operator(spec);
    for (double v : pint::assemble_rhs(spec, *g)) EXPECT_EQ(v, 0.0);
}

TEST(AssembleRhs, SingleBackwardEulerStep)
{
    auto spec = pint::ex1_case2(3, 1, 1.0);
    spec.source_f = [](std::span<const double>, double) { return 0.0; };
    const auto g = pint::build_spatial_operator(spec);
    const Vector f = pint::assemble_rhs(spec, *g);
    Vector x(2);
    for (std::size_t s = 0; s < 9; ++s) {
        spec.coordinates(s, x);
        EXPECT_NEAR(f[s], spec.initial_psi(x) / spec.dt(), 1e-14);
    }
}

TEST(AssembleRhs, DenseSolveReproducesCaseOne)
{
    const auto spec = pint::ex1_case1(7, 4);
    const auto g = pint::build_spatial_operator(spec);
    const Vector f = pint::assemble_rhs(spec, *g);
    const oracle::Mat a = pint::dense_assemble(spec, pint::DenseWhich::A);
    const oracle::Vec u = a.partialPivLu().solve(as_vec(f));
    const Vector exact = pint::sample_exact_solution(spec);
    EXPECT_LT(oracle::max_abs_diff(u, as_vec(exact)), 0.1);
}

TEST(AllAtOnce, SingleBackwardEulerStep)
{
    const auto spec = pint::ex1_case1(3, 1, 1.0);
    const auto a = pint::build_all_at_once(spec);
    const Vector u = oracle::random_vector(9, 1);
    Vector gu(9);
    a.spatial().apply(u, gu);
    const Vector au = pint::apply_all_at_once(a, u);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(au[i], gu[i] + u[i] / spec.dt(), 1e-12);
}

TEST(AllAtOnce, MatchesDenseKronecker)
{
    const std::vector<pint::ProblemSpec> specs = {
        pint::ex1_case1(3, 4), pint::riesz_problem({1.3, 1.8}, 4, 8, pint::FractionalScheme::hoc4, 0.6),
        pint::ex2(7, 16, 1.1, 1.2, pint::FractionalScheme::cd2, 0.9)};
    for (const auto& spec : specs) {
        const auto a = pint::build_all_at_once(spec);
        const std::size_t n = a.spatial_size(), m = a.time_steps();
        const oracle::Mat g = dense_of(a.spatial());
        const oracle::Mat dense = oracle::kron(g, oracle::Mat::Identity(m, m)) +
                                  oracle::kron(oracle::Mat::Identity(n, n), oracle::lower_toeplitz(oracle::q_closed_form(spec.theta, spec.dt(), m)));
        for (std::uint64_t probe = 0; probe < 20; ++probe) {
            const Vector u = oracle::random_vector(a.size(), probe);
            const oracle::Vec ref = dense * as_vec(u);
            const oracle::Vec scale = dense.cwiseAbs() * as_vec(u).cwiseAbs();
            EXPECT_LT(oracle::max_abs_diff(as_vec(pint::apply_all_at_once(a, u)), ref) / scale.maxCoeff(), 1e-11);
        }
        Vector e1(a.size(), 0.0);
        e1[0] = 1.0;
        EXPECT_LT(oracle::max_abs_diff(as_vec(pint::apply_all_at_once(a, e1)), dense.col(0)), 1e-11 * dense.col(0).cwiseAbs().maxCoeff());
    }
}

TEST(AllAtOnce, ThreadedApplyMatchesSerial)
{
    const auto spec = pint::ex2(15, 64, 1.4, 1.5);
    const auto a1 = pint::build_all_at_once(spec, 1);
    const auto a4 = pint::build_all_at_once(spec, 4);
    const Vector u = oracle::random_vector(a1.size(), 11);
    EXPECT_EQ(pint::apply_all_at_once(a1, u), pint::apply_all_at_once(a4, u));
}

TEST(AllAtOnce, DimensionMismatchThrows)
{
    const auto a = pint::build_all_at_once(pint::heat_problem(3, 2));
    EXPECT_THROW((void)pint::apply_all_at_once(a, Vector(5)), pint::DimensionError);
}

TEST(TimeSpacePermute, Examples)
{
    EXPECT_EQ(pint::time_space_permute(Vector{7}, 1, 1, pint::Layout::time_major), Vector{7});
    EXPECT_EQ(pint::time_space_permute(Vector{1, 2, 3, 4, 5, 6}, 2, 3, pint::Layout::time_major),
              (Vector{1, 4, 2, 5, 3, 6}));
    const Vector v = oracle::random_vector(35, 2);
    EXPECT_EQ(pint::time_space_permute(pint::time_space_permute(v, 5, 7, pint::Layout::time_major), 5, 7,
                                       pint::Layout::space_major),
              v);
    EXPECT_THROW((void)pint::time_space_permute(v, 4, 7, pint::Layout::time_major), pint::DimensionError);
}

TEST(MarchEquivalence, DeskScaleSpecs)
{
    for (const auto& spec : {pint::ex1_case1(7, 8), pint::ex1_case2(5, 16, 0.6), pint::ex2(7, 8, 1.8, 1.9),
                             pint::riesz_problem({1.2}, 31, 32, pint::FractionalScheme::hoc4, 1.0)}) {
        const auto r = pint::check_march_equivalence(spec);
        EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
    }
}

TEST(ProblemSpec, ValidationMessages)
{
    auto check = [](pint::ProblemSpec spec, const std::string& needle) {
        try {
            spec.validate();
            ADD_FAILURE() << "expected InvalidSpecError containing " << needle;
        } catch (const pint::InvalidSpecError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    check(pint::ex1_case1(7, 4, 0.3), "theta");
    check(pint::ex2(7, 4, 2.0, 1.5), "alpha_1");
    auto k = pint::ex2(7, 4, 1.5, 1.5);
    k.diffusivity[1] = 0.0;
    check(k, "K_2");
    check(pint::ex1_case1(7, 0), "M");
    check(pint::ex1_case1(0, 4), "n_1");
    auto t = pint::heat_problem(3, 3);
    t.t_final = -1;
    check(t, "T");
}

} // namespace

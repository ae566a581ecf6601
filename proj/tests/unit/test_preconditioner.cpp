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
#include "pint/preconditioner.hpp"
#include "pint/problems.hpp"
#include "pint/verification.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using pint::Vector;
using oracle::as_vec;

TEST(PreconditionerEigenvalues, ConstantCoefficientMatchesG)
{
    const auto spec = pint::heat_problem(7, 1);
    const oracle::Mat g = pint::dense_spatial_operator(spec);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(g, Eigen::EigenvaluesOnly);
    Vector lam = pint::preconditioner_eigenvalues(spec);
    std::sort(lam.begin(), lam.end());
    EXPECT_LT(oracle::max_abs_diff(as_vec(lam), es.eigenvalues()), 1e-10 * lam.back());
}

TEST(PreconditionerEigenvalues, Cd2MatchesDenseTau)
{
    const auto spec = pint::riesz_problem({1.5}, 16, 1, pint::FractionalScheme::cd2);
    const double h = spec.h(0);
    Vector w(16);
    for (int k = 0; k < 16; ++k) w[static_cast<std::size_t>(k)] = oracle::frac_weight(1.5, k);
    oracle::Mat tau = oracle::toeplitz(w);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const std::size_t k = i + j;
            if (k + 2 < 16) tau(i, j) -= w[k + 2];
            else if (k >= 17) tau(i, j) -= w[32 - k];
        }
    tau /= std::pow(h, 1.5);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(tau, Eigen::EigenvaluesOnly);
    Vector lam = pint::preconditioner_eigenvalues(spec);
    std::sort(lam.begin(), lam.end());
    EXPECT_LT(oracle::max_abs_diff(as_vec(lam), es.eigenvalues()), 1e-10 * lam.back());
}

TEST(PreconditionerEigenvalues, KroneckerSumOrdering)
{
    const auto spec = pint::ex2(3, 1, 1.2, 1.7, pint::FractionalScheme::hoc4);
    const auto axes = pint::preconditioner_axis_eigenvalues(spec);
    const Vector lam = pint::preconditioner_eigenvalues(spec);
    ASSERT_EQ(lam.size(), 9u);
    for (std::size_t j1 = 0; j1 < 3; ++j1)
        for (std::size_t j2 = 0; j2 < 3; ++j2) EXPECT_DOUBLE_EQ(lam[j1 * 3 + j2], axes[0][j1] + axes[1][j2]);
}

TEST(SpectralBounds, FractionalSchemes)
{
    const auto cd2 = pint::spectral_bounds_for(pint::ex2(7, 4, 1.1, 1.2, pint::FractionalScheme::cd2));
    EXPECT_EQ(cd2.a_min, 0.5);
    EXPECT_EQ(cd2.a_max, 1.5);
    const auto hoc4 = pint::spectral_bounds_for(pint::ex2(7, 4, 1.1, 1.2, pint::FractionalScheme::hoc4));
    EXPECT_EQ(hoc4.a_min, 0.375);
    EXPECT_EQ(hoc4.a_max, 2.0);
    EXPECT_NEAR(pint::choose_omega(hoc4), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(pint::build_preconditioner(pint::ex2(7, 4, 1.1, 1.2)).omega(), 0.8660254037844386, 1e-15);
}

TEST(SpectralBounds, VariableCoefficientCases)
{
    const auto c1 = pint::spectral_bounds_for(pint::ex1_case1(15, 4));
    EXPECT_EQ(c1.a_min, 40.0);
    EXPECT_EQ(c1.a_max, 42.0);
    EXPECT_NEAR(pint::choose_omega(c1), 40.98780306383839, 1e-12);
    const auto c2 = pint::spectral_bounds_for(pint::ex1_case2(15, 4));
    EXPECT_EQ(c2.a_min, 400.0);
    EXPECT_EQ(c2.a_max, 441.0);
    EXPECT_NEAR(pint::choose_omega(c2), 420.0, 1e-12);
}

TEST(SpectralBounds, SampledCoefficientRange)
{
    auto spec = pint::ex1_case2(15, 4);
    spec.coeff_range.reset();
    const auto b = pint::spectral_bounds_for(spec);
    EXPECT_NEAR(b.a_min, 400.0, 1e-12);
    EXPECT_NEAR(b.a_max, 441.0, 1e-12);
}

TEST(SpectralBounds, LaplacianLowerBoundIsSmallestEigenvalue)
{
    const auto spec = pint::ex1_case1(9, 2);
    Vector lam = pint::preconditioner_eigenvalues(spec);
    EXPECT_NEAR(pint::spectral_bounds_for(spec).p_min_eig_bound, *std::min_element(lam.begin(), lam.end()), 1e-10);
}

TEST(ChooseOmega, Examples)
{
    EXPECT_NEAR(pint::choose_omega({0.375, 2.0, 1.0}), 0.8660254037844386, 1e-15);
    EXPECT_EQ(pint::choose_omega({1.0, 1.0, 1.0}), 1.0);
    EXPECT_NEAR(pint::choose_omega({40.0, 42.0, 1.0}), 40.98780306383839, 1e-12);
}

TEST(AssumptionLowerBound, NearLaplacianSingleNode)
{
    const auto spec = pint::riesz_problem({2.0 - 1e-12}, 1, 1, pint::FractionalScheme::cd2);
    EXPECT_NEAR(pint::assumption_lower_bound(spec), 8.0, 1e-9);
}

TEST(AssumptionLowerBound, PositiveAndSlowlyDecreasing)
{
    for (double alpha : {1.1, 1.5, 1.9}) {
        double prev = 0.0;
        for (std::size_t n : {64, 128, 256, 512, 1024, 10000}) {
            const double v = pint::assumption_lower_bound(pint::riesz_problem({alpha}, n, 1, pint::FractionalScheme::cd2));
            EXPECT_GT(v, 0.0);
            if (prev > 0.0 && n <= 1024) {
                EXPECT_LE(v, prev);
                EXPECT_LT((prev - v) / prev, 0.03) << "alpha=" << alpha << " n=" << n;
            }
            prev = v;
        }
    }
}

TEST(AssumptionLowerBound, BelowSmallestPreconditionerEigenvalue)
{
    for (auto scheme : {pint::FractionalScheme::cd2, pint::FractionalScheme::hoc4}) {
        for (const auto& spec : {pint::ex2(15, 1, 1.1, 1.9, scheme), pint::riesz_problem({1.5}, 100, 1, scheme)}) {
            const Vector lam = pint::preconditioner_eigenvalues(spec);
            EXPECT_LE(pint::assumption_lower_bound(spec), *std::min_element(lam.begin(), lam.end()));
        }
    }
}

TEST(AssumptionLowerBound, WrongKindThrows)
{
    EXPECT_THROW((void)pint::assumption_lower_bound(pint::heat_problem(3, 1)), pint::InvalidSpecError);
}

TEST(ApplyPinv, SingleModeIsForwardSubstitution)
{
    const auto spec = pint::riesz_problem({1.5}, 1, 6, pint::FractionalScheme::cd2, 1.0);
    const auto p = pint::build_preconditioner(spec, 1.0);
    ASSERT_EQ(p.spatial_size(), 1u);
    const double lambda = p.lambdas()[0];
    oracle::Mat d = oracle::lower_toeplitz(oracle::q_closed_form(1.0, spec.dt(), 6));
    d.diagonal().array() += lambda;
    const Vector v = oracle::random_vector(6, 4);
    EXPECT_LT(oracle::max_abs_diff(as_vec(pint::apply_pinv(p, v)), oracle::forward_substitution(d, as_vec(v))), 1e-12);
}

TEST(ApplyPinv, InvertsDenseAssembly)
{
    const std::vector<pint::ProblemSpec> specs = {pint::ex1_case1(3, 4), pint::ex2(4, 8, 1.3, 1.7, pint::FractionalScheme::cd2),
                                                  pint::ex2(7, 16, 1.1, 1.2), pint::ex1_case2(7, 16, 0.8)};
    for (const auto& spec : specs) {
        const auto p = pint::build_preconditioner(spec);
        const oracle::Mat pd = pint::dense_assemble(spec, pint::DenseWhich::P_omega, p.omega());
        for (std::uint64_t probe = 0; probe < 5; ++probe) {
            const Vector u = oracle::random_vector(p.size(), probe);
            const oracle::Vec pu = pd * as_vec(u);
            const Vector back = pint::apply_pinv(p, Vector(pu.data(), pu.data() + pu.size()));
            EXPECT_LT(oracle::max_abs_diff(as_vec(back), as_vec(u)), 1e-10) << spec.name;
        }
    }
}

TEST(ApplyPinv, DenseBlockDiagonalization)
{
    // P_omega = (S (x) I_M) blkdiag(D_i) (S (x) I_M), and = omega P^ (x) I + I (x) Q.
    const std::vector<pint::ProblemSpec> specs = {pint::heat_problem(3, 4), pint::ex2(4, 8, 1.5, 1.6),
                                                  pint::ex1_case1(7, 16)};
    for (const auto& spec : specs) {
        const auto p = pint::build_preconditioner(spec);
        const std::size_t m = p.time_steps(), n = p.spatial_size();
        oracle::Mat s = oracle::Mat::Ones(1, 1);
        for (std::size_t ni : spec.n) s = oracle::kron(s, oracle::sine_matrix(ni));
        const oracle::Mat q = oracle::lower_toeplitz(oracle::q_closed_form(spec.theta, spec.dt(), m));
        oracle::Mat blk = oracle::Mat::Zero(m * n, m * n);
        for (std::size_t i = 0; i < n; ++i) {
            blk.block(i * m, i * m, m, m) = q + p.omega() * p.lambdas()[i] * oracle::Mat::Identity(m, m);
        }
        const oracle::Mat sm = oracle::kron(s, oracle::Mat::Identity(m, m));
        const oracle::Mat via_blocks = sm * blk * sm;
        const oracle::Mat dense = pint::dense_assemble(spec, pint::DenseWhich::P_omega, p.omega());
        EXPECT_LT((via_blocks - dense).cwiseAbs().maxCoeff(), 1e-10 * dense.cwiseAbs().maxCoeff()) << spec.name;
    }
}

TEST(ApplyPinv, ExactForConstantCoefficientHeat)
{
    const auto spec = pint::heat_problem(15, 32);
    const auto a = pint::build_all_at_once(spec);
    const auto p = pint::build_preconditioner(spec);
    EXPECT_EQ(p.omega(), 1.0);
    const Vector u = oracle::random_vector(a.size(), 8);
    const Vector back = pint::apply_pinv(p, pint::apply_all_at_once(a, u));
    EXPECT_LT(oracle::max_abs_diff(as_vec(back), as_vec(u)), 1e-9);
}

TEST(ApplyPinv, Linear)
{
    const auto p = pint::build_preconditioner(pint::ex2(7, 32, 1.4, 1.5));
    const Vector u = oracle::random_vector(p.size(), 1), v = oracle::random_vector(p.size(), 2);
    Vector comb(p.size());
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = 2.5 * u[i] - 0.75 * v[i];
    const oracle::Vec lhs = as_vec(pint::apply_pinv(p, comb));
    const oracle::Vec rhs = 2.5 * as_vec(pint::apply_pinv(p, u)) - 0.75 * as_vec(pint::apply_pinv(p, v));
    EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-11 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
}

TEST(ApplyPinv, WorkersGiveIdenticalResults)
{
    auto p = pint::build_preconditioner(pint::ex2(15, 128, 1.1, 1.9), std::nullopt, 1);
    const Vector v = oracle::random_vector(p.size(), 21);
    const Vector serial = pint::apply_pinv(p, v);
    p.set_workers(4);
    EXPECT_EQ(pint::apply_pinv(p, v), serial);
}

TEST(ApplyPinv, DimensionMismatchThrows)
{
    const auto p = pint::build_preconditioner(pint::heat_problem(3, 2));
    EXPECT_THROW((void)pint::apply_pinv(p, Vector(4)), pint::DimensionError);
}

TEST(TwoSided, RightFactorRoundTrip)
{
    const auto p = pint::build_preconditioner(pint::ex1_case2(7, 8));
    const Vector v = oracle::random_vector(p.size(), 3);
    const Vector back = pint::apply_two_sided(p, pint::apply_two_sided(p, v, pint::TwoSidedOp::r_fwd), pint::TwoSidedOp::r_inv);
    EXPECT_LT(oracle::max_abs_diff(as_vec(back), as_vec(v)), 1e-13);
}

TEST(TwoSided, FactorsComposeToPinv)
{
    const auto p = pint::build_preconditioner(pint::ex2(7, 8, 1.2, 1.3));
    const Vector v = oracle::random_vector(p.size(), 5);
    const Vector split = pint::apply_two_sided(p, pint::apply_two_sided(p, v, pint::TwoSidedOp::l_inv), pint::TwoSidedOp::r_inv);
    EXPECT_LT(oracle::max_abs_diff(as_vec(split), as_vec(pint::apply_pinv(p, v))), 1e-12);
}

TEST(TwoSided, MatchesDenseSplit)
{
    for (const auto& spec : {pint::ex1_case1(3, 8), pint::riesz_problem({1.7}, 15, 8, pint::FractionalScheme::hoc4, 0.75)}) {
        const auto p = pint::build_preconditioner(spec);
        const auto a = pint::build_all_at_once(spec);
        const oracle::Mat pl = pint::dense_assemble(spec, pint::DenseWhich::P_l, p.omega());
        const oracle::Mat pr = pint::dense_assemble(spec, pint::DenseWhich::P_r, p.omega());
        const oracle::Mat ad = pint::dense_assemble(spec, pint::DenseWhich::A);
        const oracle::Mat sys = pl.lu().solve(ad) * pr.inverse();
        for (std::uint64_t probe = 0; probe < 5; ++probe) {
            const Vector x = oracle::random_vector(p.size(), probe);
            const Vector y = pint::apply_two_sided(
                p, pint::apply_all_at_once(a, pint::apply_two_sided(p, x, pint::TwoSidedOp::r_inv)), pint::TwoSidedOp::l_inv);
            const oracle::Vec ref = sys * as_vec(x);
            EXPECT_LT(oracle::max_abs_diff(as_vec(y), ref), 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
        }
    }
}

TEST(SpectrumInclusion, Cd2UpTo128)
{
    for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        for (std::size_t n : {8, 128}) {
            const auto r = pint::check_spectrum_inclusion(pint::riesz_problem({alpha}, n, 1, pint::FractionalScheme::cd2));
            EXPECT_TRUE(r.pass) << r.detail;
        }
    }
}

TEST(SpectrumInclusion, VariableCoefficient)
{
    for (std::size_t n : {3, 15}) {
        for (const auto& spec : {pint::ex1_case1(n, 1), pint::ex1_case2(n, 1)}) {
            const auto r = pint::check_spectrum_inclusion(spec);
            EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
        }
    }
}

} // namespace

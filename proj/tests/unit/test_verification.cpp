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

#include "pint/errors.hpp"
#include "pint/preconditioner.hpp"
#include "pint/problems.hpp"
#include "pint/verification.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

double quantity(const pint::TheoremReport& r, const std::string& key)
{
    for (const auto& [k, v] : r.quantities)
        if (k == key) return v;
    ADD_FAILURE() << "missing quantity " << key << " in " << r.name;
    return std::nan("");
}

TEST(DenseQTheta, MatchesClosedForm)
{
    for (double theta : {0.5, 0.7, 1.0}) {
        const oracle::Mat q = pint::dense_q_theta(theta, 0.25, 9);
        const oracle::Mat ref = oracle::lower_toeplitz(oracle::q_closed_form(theta, 0.25, 9));
        EXPECT_LT((q - ref).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(BTheta, CrankNicolsonIsRankOne)
{
    const auto spec = pint::heat_problem(1, 4, 0.5);
    const oracle::Mat b = pint::dense_assemble(spec, pint::DenseWhich::B_theta) * spec.dt();
    oracle::Vec v(4);
    v << 1.0, -1.0, 1.0, -1.0;
    EXPECT_LT((b - 4.0 * v * v.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BTheta, BackwardEulerIsTridiagonal)
{
    const oracle::Mat q = pint::dense_q_theta(1.0, 1.0, 5);
    const oracle::Mat b = q + q.transpose();
    EXPECT_LT((b - oracle::second_difference(5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BTheta, PsdGrid)
{
    const auto r = pint::check_btheta_psd({0.5, 0.6, 0.75, 0.9, 1.0}, {1, 2, 5, 16, 64, 128});
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_GE(quantity(r, "min_eigenvalue"), -1e-10);
}

TEST(Kms, MatrixFromTheta)
{
    const auto spec = pint::heat_problem(1, 4, 2.0 / 3.0);
    const oracle::Mat k = pint::dense_assemble(spec, pint::DenseWhich::KMS);
    EXPECT_NEAR(k(0, 3), -0.125, 1e-14);
    EXPECT_NEAR(k(2, 1), -0.5, 1e-14);
    EXPECT_EQ(k(1, 1), 1.0);
}

TEST(Kms, SymbolExamples)
{
    EXPECT_NEAR(pint::kms_symbol(-0.5, std::numbers::pi), 3.0, 1e-14);
    EXPECT_NEAR(pint::kms_symbol(-0.5, 0.0), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(pint::kms_symbol(0.0, 1.234), 1.0, 1e-15);
    EXPECT_THROW((void)pint::kms_symbol(1.0, 0.0), pint::InvalidSpecError);
}

TEST(Kms, SymbolBoundsEigenvalues)
{
    // The eigenvalues of the KMS matrix lie inside the range of its symbol.
    for (double rho : {-0.9, -0.5, -0.1}) {
        const oracle::Mat k = pint::dense_kms(rho, 40);
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(k, Eigen::EigenvaluesOnly);
        EXPECT_GE(es.eigenvalues().minCoeff(), pint::kms_symbol(rho, 0.0) - 1e-12);
        EXPECT_LE(es.eigenvalues().maxCoeff(), pint::kms_symbol(rho, std::numbers::pi) + 1e-12);
    }
    EXPECT_TRUE(pint::check_kms_symbol({-0.99, -0.5, -0.01, 0.0}).pass);
}

TEST(DenseGuards, RefuseLargeSystems)
{
    EXPECT_THROW((void)pint::dense_assemble(pint::ex1_case1(31, 16), pint::DenseWhich::A), pint::SizeGuardError);
    EXPECT_THROW((void)pint::dense_kms(-0.5, 257), pint::SizeGuardError);
    EXPECT_NO_THROW((void)pint::dense_assemble(pint::ex1_case1(15, 16), pint::DenseWhich::A));
}

TEST(NuBound, OptimalOmegaGivesBoundRatio)
{
    for (auto [lo, hi] : {std::pair{0.5, 1.5}, std::pair{0.375, 2.0}, std::pair{40.0, 42.0}}) {
        const double w = pint::choose_omega({lo, hi, 1.0});
        EXPECT_NEAR(pint::nu_bound(lo, hi, w, 0.5), hi / lo, 1e-12 * hi / lo);
        EXPECT_GE(pint::nu_bound(lo, hi, 0.5 * w, 0.5), hi / lo);
        EXPECT_GE(pint::nu_bound(lo, hi, w, 1.0), pint::nu_bound(lo, hi, w, 0.5));
    }
    EXPECT_EQ(pint::nu_bound(1.0, 1.0, 1.0, 0.5), 1.0);
}

TEST(ConditionBound, Examples)
{
    const auto heat = pint::check_condition_bound(pint::heat_problem(7, 16), {1.0});
    EXPECT_TRUE(heat.pass) << heat.detail;
    EXPECT_NEAR(quantity(heat, "kappa@omega=1"), 1.0, 1e-8);

    const auto cd2 = pint::check_condition_bound(pint::ex2(7, 16, 1.3, 1.8, pint::FractionalScheme::cd2), {0.5, std::sqrt(0.75), 1.5});
    EXPECT_TRUE(cd2.pass) << cd2.detail;
    const auto hoc4 = pint::check_condition_bound(pint::ex2(7, 16, 1.1, 1.9), {std::sqrt(0.75), 1.0});
    EXPECT_TRUE(hoc4.pass) << hoc4.detail;

    const auto lap = pint::check_condition_bound(pint::ex1_case1(7, 32, 0.75), {20.0, 40.98780306383839, 80.0});
    EXPECT_TRUE(lap.pass) << lap.detail;
}

TEST(ResidualRelation, HoldsForRepresentativeSpecs)
{
    for (const auto& spec : {pint::ex1_case1(7, 16), pint::ex2(7, 16, 1.5, 1.5), pint::ex1_case2(7, 8, 1.0)}) {
        const auto r = pint::check_residual_relation(spec);
        EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
        EXPECT_GE(quantity(r, "iterations_compared"), 2.0);
    }
}

TEST(SpectrumInclusion, FractionalStrictlyInside)
{
    for (double alpha : {1.1, 1.5, 1.9}) {
        for (auto scheme : {pint::FractionalScheme::cd2, pint::FractionalScheme::hoc4}) {
            const auto r = pint::check_spectrum_inclusion(pint::riesz_problem({alpha}, 64, 1, scheme));
            EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
        }
    }
    const auto r2 = pint::check_spectrum_inclusion(pint::ex2(16, 1, 1.2, 1.7, pint::FractionalScheme::cd2));
    EXPECT_TRUE(r2.pass) << r2.detail;
}

TEST(Lemmas, RandomizedChecks)
{
    EXPECT_TRUE(pint::check_quotient_bounds(1).pass);
    EXPECT_TRUE(pint::check_order_inversion(1).pass);
}

TEST(Suites, KernelsPass)
{
    for (const auto& r : pint::run_verification_suite("kernels", 3)) EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
}

TEST(Suites, UnknownSuiteThrows)
{
    EXPECT_THROW((void)pint::run_verification_suite("bogus", 1), pint::InvalidSpecError);
}

} // namespace

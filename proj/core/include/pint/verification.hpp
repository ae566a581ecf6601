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

// Dense small-scale oracles and numerical checks of the spectral results that
// back the preconditioner: PSD of Q + Q^T, the condition number bound for the
// two-sided system, the residual relation between the one- and two-sided
// solvers and the spectral inclusion sigma(P^{-1} G) in [a_min, a_max].

#include "pint/discretization.hpp"
#include "pint/preconditioner.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pint {

using DenseMatrix = Eigen::MatrixXd;

/// Dense oracles refuse M*N above this.
inline constexpr std::size_t kDenseLimit = 4096;
/// ... and M above this for the temporal matrices.
inline constexpr std::size_t kDenseTimeLimit = 256;

enum class DenseWhich { A, P_omega, P_l, P_r, B_theta, KMS };

struct TheoremReport {
    std::string name;
    std::vector<std::pair<std::string, double>> quantities;
    bool pass = false;
    double tolerance = 0.0;
    std::string detail;
};

// Dense building blocks, assembled entrywise without the fast kernels.
[[nodiscard]] DenseMatrix dense_spatial_operator(const ProblemSpec& spec);
[[nodiscard]] DenseMatrix dense_preconditioner_base(const ProblemSpec& spec);  // P^
[[nodiscard]] DenseMatrix dense_q_theta(double theta, double dt, std::size_t m);
[[nodiscard]] DenseMatrix dense_kms(double rho, std::size_t m);

/// omega defaults to choose_omega(spectral_bounds_for(spec)).
[[nodiscard]] DenseMatrix dense_assemble(const ProblemSpec& spec, DenseWhich which,
                                         std::optional<double> omega = std::nullopt);

/// nu(omega) of the condition number bound. The theta > 1/2 variant carries an
/// extra 1 inside the max/min.
[[nodiscard]] double nu_bound(double a_min, double a_max, double omega, double theta);

/// (1 - rho^2) / (1 - 2 rho cos(phi) + rho^2), |rho| < 1.
[[nodiscard]] double kms_symbol(double rho, double phi);

[[nodiscard]] TheoremReport check_btheta_psd(const std::vector<double>& thetas, const std::vector<std::size_t>& ms);
[[nodiscard]] TheoremReport check_condition_bound(const ProblemSpec& spec, const std::vector<double>& omegas);
[[nodiscard]] TheoremReport check_residual_relation(const ProblemSpec& spec, std::optional<double> omega = std::nullopt);
[[nodiscard]] TheoremReport check_spectrum_inclusion(const ProblemSpec& spec);
[[nodiscard]] TheoremReport check_kms_symbol(const std::vector<double>& rhos);
[[nodiscard]] TheoremReport check_quotient_bounds(std::uint64_t seed);
[[nodiscard]] TheoremReport check_order_inversion(std::uint64_t seed);
[[nodiscard]] TheoremReport check_march_equivalence(const ProblemSpec& spec);

/// The kernel battery: DST, ILTT, Toeplitz products, tau spectra, H Q = T,
/// all-at-once products and march equivalence.
[[nodiscard]] std::vector<TheoremReport> run_kernel_checks(std::uint64_t seed);
[[nodiscard]] std::vector<TheoremReport> run_lemma_checks(std::uint64_t seed);
[[nodiscard]] std::vector<TheoremReport> run_theorem_checks(std::uint64_t seed);

/// Suite name: kernels, lemmas, theorems or all. Throws InvalidSpecError otherwise.
[[nodiscard]] std::vector<TheoremReport> run_verification_suite(const std::string& suite, std::uint64_t seed);

} // namespace pint

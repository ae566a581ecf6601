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

// The PinT preconditioner P_omega = omega P^ (x) I_M + I_N (x) Q_theta, where P^
// is diagonalized by the (tensorized) DST-I, and its two-sided split
// P_omega = P_l P_r with P_r = (omega P^)^{1/2} (x) I_M.

#include "pint/discretization.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pint {

struct SpectralBounds {
    double a_min = 1.0;            // lower bound of sigma(P^{-1} G)
    double a_max = 1.0;            // upper bound of sigma(P^{-1} G)
    double p_min_eig_bound = 1.0;  // lower bound of lambda_min(P^)
};

enum class TwoSidedOp { l_inv, r_inv, r_fwd };

class PintPreconditioner {
public:
    [[nodiscard]] std::size_t time_steps() const noexcept { return m_; }
    [[nodiscard]] std::size_t spatial_size() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return m_ * n_; }
    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] const SpectralBounds& bounds() const noexcept { return bounds_; }
    /// Eigenvalues of P^, indexed like the spatial nodes (mode j1*n2 + j2).
    [[nodiscard]] const Vector& lambdas() const noexcept { return lambdas_; }
    [[nodiscard]] std::span<const double> q_col() const noexcept { return q_col_; }
    /// First column of D_i^{-1}, D_i = omega lambda_i I_M + Q_theta.
    [[nodiscard]] std::span<const double> inv_col(std::size_t mode) const noexcept
    {
        return {inv_cols_.data() + slot_[mode] * m_, m_};
    }
    /// Number of distinct eigenvalues (= inverse columns actually stored).
    [[nodiscard]] std::size_t distinct_modes() const noexcept { return inv_cols_.size() / m_; }

    [[nodiscard]] int workers() const noexcept { return workers_; }
    void set_workers(int workers) noexcept { workers_ = workers < 1 ? 1 : workers; }

    /// out = P_omega^{-1} v. `out` may alias `v`.
    void apply_pinv(std::span<const double> v, std::span<double> out) const;
    void apply_two_sided(std::span<const double> v, std::span<double> out, TwoSidedOp which) const;

    /// out = (S (x) I_M) v with S the orthonormal tensorized DST. Involutory.
    void spatial_transform(std::span<const double> v, std::span<double> out) const;

private:
    friend PintPreconditioner build_preconditioner(const ProblemSpec&, std::optional<double>, int);

    enum class BlockOp { inverse, scaled_inverse, scale_down, scale_up };
    void apply_blocks(std::span<double> data, BlockOp op) const;
    void transform_in_place(double* data) const;

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    double omega_ = 1.0;
    SpectralBounds bounds_;
    std::vector<std::size_t> axis_sizes_;
    std::vector<SineTransformPlan> plans_;
    Vector lambdas_;
    Vector q_col_;
    std::vector<std::size_t> slot_;              // mode -> distinct eigenvalue slot
    Vector inv_cols_;                            // distinct_modes x M, row-major
    std::vector<PreparedLowerToeplitz> prepared_;  // empty when over the memory budget
    int workers_ = 1;
};

/// P^ eigenvalues for the spec (tau / tau_1 / constant Laplacian), mode-indexed.
[[nodiscard]] Vector preconditioner_eigenvalues(const ProblemSpec& spec);

/// Per-axis P^ eigenvalues, already scaled by K_i / h_i^alpha_i (or 1/h_i^2).
[[nodiscard]] std::vector<Vector> preconditioner_axis_eigenvalues(const ProblemSpec& spec);

[[nodiscard]] SpectralBounds spectral_bounds_for(const ProblemSpec& spec);

/// sqrt(a_min a_max).
[[nodiscard]] double choose_omega(const SpectralBounds& bounds);

/// Lower bound of lambda_min(P^) for fractional kinds, by a scan over n' <= n_i.
[[nodiscard]] double assumption_lower_bound(const ProblemSpec& spec);

/// Builds P_omega; omega defaults to choose_omega(spectral_bounds_for(spec)).
[[nodiscard]] PintPreconditioner build_preconditioner(const ProblemSpec& spec,
                                                      std::optional<double> omega = std::nullopt,
                                                      int workers = 1);

[[nodiscard]] Vector apply_pinv(const PintPreconditioner& p, std::span<const double> v);
[[nodiscard]] Vector apply_two_sided(const PintPreconditioner& p, std::span<const double> v, TwoSidedOp which);

} // namespace pint

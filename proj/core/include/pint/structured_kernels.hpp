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

// Fast algebra for the structured matrices that appear in the all-at-once
// system: symmetric Toeplitz (spatial 1-D factors), lower triangular Toeplitz
// (temporal factors and the diagonal blocks of the preconditioner), the
// orthonormal DST-I and the eigenvalues of tau matrices.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pint {

using Vector = std::vector<double>;

/// Symmetric Toeplitz matrix T[i][j] = first_col[|i - j|].
class SymmetricToeplitz {
public:
    explicit SymmetricToeplitz(Vector first_col);

    [[nodiscard]] std::size_t size() const noexcept { return first_col_.size(); }
    [[nodiscard]] std::span<const double> first_col() const noexcept { return first_col_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return first_col_[i > j ? i - j : j - i];
    }

private:
    Vector first_col_;
};

/// Lower triangular Toeplitz matrix L[i][j] = first_col[i - j] for i >= j.
class LowerToeplitz {
public:
    explicit LowerToeplitz(Vector first_col);

    [[nodiscard]] std::size_t size() const noexcept { return first_col_.size(); }
    [[nodiscard]] std::span<const double> first_col() const noexcept { return first_col_; }
    [[nodiscard]] bool invertible() const noexcept { return first_col_[0] != 0.0; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return i >= j ? first_col_[i - j] : 0.0;
    }

private:
    Vector first_col_;
};

/// Orthonormal DST-I of order n: S[i][j] = sqrt(2/(n+1)) sin((i+1)(j+1)pi/(n+1)).
///
/// S is symmetric and involutory. The transform is computed through one real
/// FFT of the odd extension of length 2(n+1). A plan owns no mutable state;
/// apply() may be called concurrently as long as outputs are distinct.
class SineTransformPlan {
public:
    explicit SineTransformPlan(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// out = S x. `out` may alias `x`.
    void apply(std::span<const double> x, std::span<double> out) const;

    /// Transforms `count` vectors of length n stored with element stride
    /// `stride` and vector-to-vector distance `dist`, in place.
    void apply_strided(double* data, std::size_t count, std::size_t stride, std::size_t dist) const;

private:
    std::size_t n_;
    double scale_;
};

/// Eigenvalues of tau(T) for a symmetric Toeplitz T, indexed by the DST mode.
struct TauEigenvalues {
    std::size_t n = 0;
    Vector lambdas;
};

/// Which route lower_toeplitz_matvec takes.
enum class ProductPath { automatic, direct, fft };

/// Below this order products and inversions use direct O(n^2) loops.
inline constexpr std::size_t kDirectThreshold = 64;

/// Smallest power of two >= n (n >= 1).
[[nodiscard]] std::size_t next_pow2(std::size_t n) noexcept;

/// T x via circulant embedding of power-of-two length >= 2n - 1.
[[nodiscard]] Vector sym_toeplitz_matvec(const SymmetricToeplitz& t, std::span<const double> x);

/// L x, i.e. the first m terms of the causal convolution l * x.
[[nodiscard]] Vector lower_toeplitz_matvec(const LowerToeplitz& l, std::span<const double> x,
                                           ProductPath path = ProductPath::automatic);

/// First column of L^{-1} by divide and conquer: O(m log m).
///
/// Splits L = [[L1, 0], [L2, L1]]; the top half of the inverse column is the
/// inverse column of L1 and the bottom half is -L1^{-1} (L2 v_top). Orders up
/// to kDirectThreshold use forward substitution. Throws SingularMatrixError if
/// l_0 == 0.
[[nodiscard]] Vector iltt_inverse_first_column(const LowerToeplitz& l);

/// S x with a freshly built plan.
[[nodiscard]] Vector dst1_apply(const SineTransformPlan& plan, std::span<const double> x);

/// lambda_j = t_0 + 2 sum_{k>=1} t_k cos((j+1) k pi / (n+1)).
[[nodiscard]] TauEigenvalues tau_eigenvalues(const SymmetricToeplitz& t);

/// Solves the lower bidiagonal Toeplitz system (diag, sub) x = b in O(m).
[[nodiscard]] Vector bidiagonal_forward_solve(double diag, double sub, std::span<const double> b);

/// In-place variant used on strided per-node slices.
void bidiagonal_forward_solve_inplace(double diag, double sub, std::span<double> b);

/// A lower triangular Toeplitz matrix of fixed order with its FFT symbol
/// precomputed, so repeated products cost two real FFTs each.
class PreparedLowerToeplitz {
public:
    PreparedLowerToeplitz() = default;
    explicit PreparedLowerToeplitz(std::span<const double> first_col);

    [[nodiscard]] std::size_t size() const noexcept { return m_; }

    /// out = L x. `out` must not alias `x`. `work` is resized as needed and may
    /// be reused across calls by the same thread.
    void apply(std::span<const double> x, std::span<double> out, std::vector<double>& work) const;

private:
    std::size_t m_ = 0;
    std::size_t fft_len_ = 0;
    Vector col_;                                 // used when m_ <= kDirectThreshold
    std::vector<std::complex<double>> symbol_;   // used otherwise
};

} // namespace pint

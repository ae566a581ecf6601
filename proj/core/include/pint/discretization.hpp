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

// Spatial operators G, the temporal factors of the theta-method and the
// all-at-once operator A = G (x) I_M + I_N (x) Q_theta.
//
// Vectors of length M*N are stored space-major: entry (s, m) of the solution
// (spatial node s, time level m+1) lives at s*M + m. Spatial nodes of a 2-D grid
// are numbered s = i1*n2 + i2, so axis 0 is the slow index.

#include "pint/structured_kernels.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pint {

enum class OperatorKind { variable_laplacian, riesz_fractional };
enum class FractionalScheme { cd2, hoc4 };

[[nodiscard]] std::string to_string(OperatorKind kind);
[[nodiscard]] std::string to_string(FractionalScheme scheme);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    [[nodiscard]] double length() const noexcept { return hi - lo; }
};

/// f(x), x has one coordinate per spatial axis.
using SpatialFunction = std::function<double(std::span<const double> x)>;
/// f(x, t).
using SpaceTimeFunction = std::function<double(std::span<const double> x, double t)>;

/// One PDE instance u_t = L u + f on a box with homogeneous Dirichlet data.
struct ProblemSpec {
    std::string name;
    OperatorKind kind = OperatorKind::riesz_fractional;
    std::vector<Interval> domain;     // one interval per axis; d = domain.size()
    double t_final = 1.0;
    std::size_t time_steps = 1;       // M
    std::vector<std::size_t> n;       // interior points per axis
    double theta = 0.5;
    FractionalScheme scheme = FractionalScheme::cd2;
    std::vector<double> alpha;        // riesz_fractional only
    std::vector<double> diffusivity;  // K_i, riesz_fractional only
    SpatialFunction coeff_a;          // variable_laplacian only
    /// Extrema of coeff_a over the closed domain when known analytically.
    std::optional<std::pair<double, double>> coeff_range;
    SpaceTimeFunction source_f;
    SpatialFunction initial_psi;
    SpaceTimeFunction exact_u;        // optional; empty when unknown

    [[nodiscard]] std::size_t dim() const noexcept { return domain.size(); }
    [[nodiscard]] double dt() const noexcept { return t_final / static_cast<double>(time_steps); }
    [[nodiscard]] double h(std::size_t axis) const noexcept
    {
        return domain[axis].length() / static_cast<double>(n[axis] + 1);
    }
    /// N = prod n_i.
    [[nodiscard]] std::size_t spatial_size() const noexcept;
    /// Grid coordinate of interior point i (0-based) on `axis`.
    [[nodiscard]] double node(std::size_t axis, std::size_t i) const noexcept
    {
        return domain[axis].lo + static_cast<double>(i + 1) * h(axis);
    }
    /// Coordinates of spatial node s.
    void coordinates(std::size_t s, std::span<double> x) const noexcept;

    /// Throws InvalidSpecError naming the violated constraint.
    void validate() const;
};

/// 1-D fractional operator: symmetric Toeplitz part plus a symmetric
/// correction on the first and last rows/columns,
///   G = T + gamma (e_0 a^T + a e_0^T + e_{n-1} b^T + b e_{n-1}^T),
/// with b the reverse of a. The correction vanishes for cd2.
struct RieszOperator1D {
    SymmetricToeplitz toeplitz;
    Vector edge;  // gamma * a; empty when there is no correction

    [[nodiscard]] std::size_t size() const noexcept { return toeplitz.size(); }
    /// Entry (i, j) of the dense matrix.
    [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept;
};

/// Symmetric discretization of -L on the interior grid.
class SpatialOperator {
public:
    enum class Structure { toeplitz_kron_sum, sparse_stencil };

    /// G = sum_i I (x) G_i (x) I over axes.
    static SpatialOperator kron_sum(std::vector<RieszOperator1D> axes);

    /// Five-point flux-form stencil on an n1 x n2 grid. `diag[s]` is the centre
    /// weight, `east[s]` couples s to s + n2 (next node along axis 0) and
    /// `north[s]` couples s to s + 1 (next node along axis 1); couplings enter
    /// with a minus sign.
    static SpatialOperator stencil(std::size_t n1, std::size_t n2, Vector diag, Vector east, Vector north);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] Structure structure() const noexcept { return structure_; }
    [[nodiscard]] const std::vector<std::size_t>& axis_sizes() const noexcept { return axis_sizes_; }
    [[nodiscard]] const std::vector<RieszOperator1D>& axes() const noexcept { return axes_; }

    /// out = G x.
    void apply(std::span<const double> x, std::span<double> out) const;

    /// Applies G to the rows of an N x cols row-major block (each spatial node
    /// owns `cols` contiguous values), i.e. out = (G (x) I_cols) in.
    void apply_columns(std::span<const double> in, std::span<double> out, std::size_t cols) const;

private:
    SpatialOperator() = default;

    void apply_axis_dense(std::size_t axis, const double* in, double* out, std::size_t cols) const;

    Structure structure_ = Structure::toeplitz_kron_sum;
    std::size_t size_ = 0;
    std::vector<std::size_t> axis_sizes_;
    std::vector<RieszOperator1D> axes_;
    Vector diag_, east_, north_;
};

/// A = G (x) I_M + I_N (x) Q_theta on space-major vectors.
class AllAtOnceOperator {
public:
    AllAtOnceOperator(std::shared_ptr<const SpatialOperator> g, Vector q_col, int workers = 1);

    [[nodiscard]] std::size_t time_steps() const noexcept { return q_col_.size(); }
    [[nodiscard]] std::size_t spatial_size() const noexcept { return g_->size(); }
    [[nodiscard]] std::size_t size() const noexcept { return time_steps() * spatial_size(); }
    [[nodiscard]] const SpatialOperator& spatial() const noexcept { return *g_; }
    [[nodiscard]] std::span<const double> q_col() const noexcept { return q_col_; }

    void apply(std::span<const double> u, std::span<double> out) const;

private:
    std::shared_ptr<const SpatialOperator> g_;
    Vector q_col_;
    PreparedLowerToeplitz q_;
    int workers_;
};

enum class Layout { time_major, space_major };

/// Fractional centred-difference weights g_0..g_n by the ratio recurrence.
[[nodiscard]] Vector frac_centered_weights(double alpha, std::size_t n);

[[nodiscard]] RieszOperator1D riesz_operator_1d(double alpha, std::size_t n, double h, FractionalScheme scheme);

[[nodiscard]] SpatialOperator variable_laplacian_2d(const ProblemSpec& spec);

/// Builds G for any supported spec (validates it first).
[[nodiscard]] std::shared_ptr<const SpatialOperator> build_spatial_operator(const ProblemSpec& spec);

/// First column of Q_theta = H_theta^{-1} T.
[[nodiscard]] Vector q_theta_first_column(double theta, double dt, std::size_t m);

/// Right-hand side f = (I_N (x) H_theta)^{-1} f~ in space-major order.
[[nodiscard]] Vector assemble_rhs(const ProblemSpec& spec, const SpatialOperator& g);

/// Convenience: A for a spec.
[[nodiscard]] AllAtOnceOperator build_all_at_once(const ProblemSpec& spec, int workers = 1);

[[nodiscard]] Vector apply_all_at_once(const AllAtOnceOperator& a, std::span<const double> u);

/// Reorders a length M*N vector from `from` layout to the other one.
[[nodiscard]] Vector time_space_permute(std::span<const double> v, std::size_t m, std::size_t n, Layout from);

/// Exact solution sampled at every node and time level t_1..t_M, space-major.
/// Throws InvalidSpecError when the spec has no exact solution.
[[nodiscard]] Vector sample_exact_solution(const ProblemSpec& spec);

} // namespace pint

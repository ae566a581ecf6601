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

#include "pint/structured_kernels.hpp"

#include "fft.hpp"
#include "pint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pint {

namespace {

using Complex = std::complex<double>;

// First `out.size()` entries of the linear convolution a * b computed with a
// cyclic FFT of length `len`. The caller guarantees that wrapped terms do not
// reach the requested entries (len >= out.size() + min(|a|,|b|) - 1 suffices,
// and len >= |a| + |b| - 1 always does).
void fft_convolve(std::span<const double> a, std::span<const double> b, std::size_t len, std::size_t offset,
                  std::span<double> out)
{
    const auto& fft = detail::RealFft::get(len);
    const std::size_t spec_len = fft.spectrum_size();
    std::vector<double> buf(len, 0.0);
    std::vector<Complex> fa(spec_len);
    std::vector<Complex> fb(spec_len);

    std::copy(a.begin(), a.end(), buf.begin());
    fft.forward(buf.data(), fa.data());
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(b.begin(), b.end(), buf.begin());
    fft.forward(buf.data(), fb.data());

    const double inv_len = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < spec_len; ++k) {
        fa[k] *= fb[k] * inv_len;
    }
    fft.inverse(fa.data(), buf.data());
    std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(offset), out.size(), out.begin());
}

void causal_direct(std::span<const double> l, std::span<const double> x, std::span<double> out)
{
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += l[i - j] * x[j];
        }
        out[i] = acc;
    }
}

// Inverse first column by forward substitution on L v = e_1.
void inverse_direct(std::span<const double> l, std::span<double> v)
{
    const double inv_diag = 1.0 / l[0];
    v[0] = inv_diag;
    for (std::size_t k = 1; k < v.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            acc += l[j] * v[k - j];
        }
        v[k] = -acc * inv_diag;
    }
}

// m is a power of two and l.size() == v.size() == m.
void inverse_pow2(std::span<const double> l, std::span<double> v)
{
    const std::size_t m = v.size();
    if (m <= kDirectThreshold) {
        inverse_direct(l, v);
        return;
    }
    const std::size_t h = m / 2;
    auto top = v.first(h);
    auto bottom = v.subspan(h);
    inverse_pow2(l.first(h), top);

    // L2 v_top is entries h..m-1 of l * v_top; a cyclic length-m product only
    // wraps terms onto indices < h - 1.
    Vector coupling(h);
    fft_convolve(l, top, m, h, coupling);

    // bottom = -L1^{-1} coupling, and L1^{-1} is lower Toeplitz with column v_top.
    fft_convolve(top, coupling, m, 0, bottom);
    for (double& b : bottom) {
        b = -b;
    }
}

} // namespace

std::size_t next_pow2(std::size_t n) noexcept
{
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

SymmetricToeplitz::SymmetricToeplitz(Vector first_col) : first_col_(std::move(first_col))
{
    if (first_col_.empty()) {
        throw DimensionError("SymmetricToeplitz: order must be positive");
    }
}

LowerToeplitz::LowerToeplitz(Vector first_col) : first_col_(std::move(first_col))
{
    if (first_col_.empty()) {
        throw DimensionError("LowerToeplitz: order must be positive");
    }
}

Vector sym_toeplitz_matvec(const SymmetricToeplitz& t, std::span<const double> x)
{
    const std::size_t n = t.size();
    require_size(x.size(), n, "sym_toeplitz_matvec");
    const auto col = t.first_col();
    const std::size_t len = next_pow2(2 * n - 1);

    // First column of the circulant that embeds T.
    Vector circ(len, 0.0);
    std::copy(col.begin(), col.end(), circ.begin());
    for (std::size_t k = 1; k < n; ++k) {
        circ[len - k] = col[k];
    }
    Vector y(n);
    fft_convolve(circ, x, len, 0, y);
    return y;
}

Vector lower_toeplitz_matvec(const LowerToeplitz& l, std::span<const double> x, ProductPath path)
{
    const std::size_t m = l.size();
    require_size(x.size(), m, "lower_toeplitz_matvec");
    Vector y(m);
    if (path == ProductPath::automatic) {
        path = m > kDirectThreshold ? ProductPath::fft : ProductPath::direct;
    }
    if (path == ProductPath::direct) {
        causal_direct(l.first_col(), x, y);
    } else {
        fft_convolve(l.first_col(), x, next_pow2(2 * m - 1), 0, y);
    }
    return y;
}

Vector iltt_inverse_first_column(const LowerToeplitz& l)
{
    if (!l.invertible()) {
        throw SingularMatrixError("iltt_inverse_first_column: zero diagonal entry");
    }
    const std::size_t m = l.size();
    const std::size_t padded = next_pow2(m);
    // The inverse of a leading principal block of a lower triangular Toeplitz
    // matrix is the leading block of the inverse, so zero padding is exact.
    Vector lp(padded, 0.0);
    std::copy(l.first_col().begin(), l.first_col().end(), lp.begin());
    Vector v(padded);
    inverse_pow2(lp, v);
    v.resize(m);
    return v;
}

SineTransformPlan::SineTransformPlan(std::size_t n)
    : n_(n), scale_(std::sqrt(2.0 / static_cast<double>(n + 1)))
{
    if (n == 0) {
        throw DimensionError("SineTransformPlan: order must be positive");
    }
    (void)detail::RealFft::get(2 * (n + 1));
}

void SineTransformPlan::apply(std::span<const double> x, std::span<double> out) const
{
    require_size(x.size(), n_, "dst1_apply");
    require_size(out.size(), n_, "dst1_apply (output)");
    Vector tmp(x.begin(), x.end());
    apply_strided(tmp.data(), 1, 1, n_);
    std::copy(tmp.begin(), tmp.end(), out.begin());
}

void SineTransformPlan::apply_strided(double* data, std::size_t count, std::size_t stride, std::size_t dist) const
{
    const std::size_t len = 2 * (n_ + 1);
    const auto& fft = detail::RealFft::get(len);
    std::vector<double> ext(len, 0.0);
    std::vector<Complex> spec(fft.spectrum_size());
    // Odd extension [0, x, 0, -reverse(x)] has spectrum -2i sum_j x_j sin(pi k (j+1)/(n+1)).
    const double half_scale = 0.5 * scale_;
    for (std::size_t v = 0; v < count; ++v) {
        double* base = data + v * dist;
        for (std::size_t j = 0; j < n_; ++j) {
            const double xj = base[j * stride];
            ext[j + 1] = xj;
            ext[len - 1 - j] = -xj;
        }
        fft.forward(ext.data(), spec.data());
        for (std::size_t i = 0; i < n_; ++i) {
            base[i * stride] = -half_scale * spec[i + 1].imag();
        }
    }
}

Vector dst1_apply(const SineTransformPlan& plan, std::span<const double> x)
{
    Vector y(x.size());
    plan.apply(x, y);
    return y;
}

TauEigenvalues tau_eigenvalues(const SymmetricToeplitz& t)
{
    const std::size_t n = t.size();
    const auto col = t.first_col();
    const std::size_t period = 2 * (n + 1);
    const double step = std::numbers::pi / static_cast<double>(n + 1);
    TauEigenvalues out{n, Vector(n)};
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            // Reduce (j+1)k modulo the period before taking the cosine.
            const std::size_t r = ((j + 1) * k) % period;
            acc += col[k] * std::cos(static_cast<double>(r) * step);
        }
        out.lambdas[j] = col[0] + 2.0 * acc;
    }
    return out;
}

void bidiagonal_forward_solve_inplace(double diag, double sub, std::span<double> b)
{
    if (diag == 0.0) {
        throw SingularMatrixError("bidiagonal_forward_solve: zero diagonal");
    }
    const double inv = 1.0 / diag;
    double prev = 0.0;
    for (double& bi : b) {
        bi = (bi - sub * prev) * inv;
        prev = bi;
    }
}

Vector bidiagonal_forward_solve(double diag, double sub, std::span<const double> b)
{
    Vector x(b.begin(), b.end());
    bidiagonal_forward_solve_inplace(diag, sub, x);
    return x;
}

PreparedLowerToeplitz::PreparedLowerToeplitz(std::span<const double> first_col) : m_(first_col.size())
{
    if (m_ == 0) {
        throw DimensionError("PreparedLowerToeplitz: order must be positive");
    }
    if (m_ <= kDirectThreshold) {
        col_.assign(first_col.begin(), first_col.end());
        return;
    }
    fft_len_ = next_pow2(2 * m_ - 1);
    const auto& fft = detail::RealFft::get(fft_len_);
    Vector buf(fft_len_, 0.0);
    std::copy(first_col.begin(), first_col.end(), buf.begin());
    symbol_.resize(fft.spectrum_size());
    fft.forward(buf.data(), symbol_.data());
    const double inv_len = 1.0 / static_cast<double>(fft_len_);
    for (auto& s : symbol_) {
        s *= inv_len;
    }
}

void PreparedLowerToeplitz::apply(std::span<const double> x, std::span<double> out, std::vector<double>& work) const
{
    require_size(x.size(), m_, "PreparedLowerToeplitz::apply");
    require_size(out.size(), m_, "PreparedLowerToeplitz::apply (output)");
    if (m_ <= kDirectThreshold) {
        causal_direct(col_, x, out);
        return;
    }
    const auto& fft = detail::RealFft::get(fft_len_);
    const std::size_t spec_len = fft.spectrum_size();
    work.resize(fft_len_ + 2 * spec_len);
    double* real = work.data();
    auto* spec = reinterpret_cast<Complex*>(work.data() + fft_len_);

    std::copy(x.begin(), x.end(), real);
    std::fill(real + m_, real + fft_len_, 0.0);
    fft.forward(real, spec);
    for (std::size_t k = 0; k < spec_len; ++k) {
        spec[k] *= symbol_[k];
    }
    fft.inverse(spec, real);
    std::copy_n(real, m_, out.begin());
}

} // namespace pint

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

#include <complex>
#include <cstddef>

namespace pint::detail {

/// Cached FFTW plans for real transforms of one length.
///
/// Plans are created once per length under a global lock and are never
/// destroyed; execution goes through FFTW's new-array interface, which is
/// thread-safe. forward() is unnormalized; inverse() returns n * x.
class RealFft {
public:
    static const RealFft& get(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

    /// in: n reals; out: n/2 + 1 complex.
    void forward(const double* in, std::complex<double>* out) const;
    /// in: n/2 + 1 complex (overwritten); out: n reals.
    void inverse(std::complex<double>* in, double* out) const;

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    ~RealFft();

private:
    explicit RealFft(std::size_t n);

    std::size_t n_;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

} // namespace pint::detail

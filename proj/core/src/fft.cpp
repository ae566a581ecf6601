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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace pint::detail {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

RealFft::RealFft(std::size_t n) : n_(n)
{
    // FFTW_UNALIGNED lets callers pass std::vector storage of any alignment.
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_dft_r2c_1d(len, real.data(), reinterpret_cast<fftw_complex*>(spec.data()), flags);
    inverse_plan_ = fftw_plan_dft_c2r_1d(len, reinterpret_cast<fftw_complex*>(spec.data()), real.data(), flags);
    if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
        throw std::runtime_error("FFTW planner failed for length " + std::to_string(n));
    }
}

RealFft::~RealFft()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const RealFft& RealFft::get(std::size_t n)
{
    // The mutex must outlive the cache: plans are destroyed under it at exit.
    std::mutex& mutex = planner_mutex();
    static std::map<std::size_t, std::unique_ptr<RealFft>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::unique_ptr<RealFft>(new RealFft(n))).first;
    }
    return *it->second;
}

void RealFft::forward(const double* in, std::complex<double>* out) const
{
    // r2c does not modify its input.
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(std::complex<double>* in, double* out) const
{
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in), out);
}

} // namespace pint::detail

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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pint {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes do not agree with the operator they are applied to.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A triangular or banded factor has a zero on its diagonal.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// A ProblemSpec (or one of its parameters) violates a documented range.
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// A dense oracle was asked for more than its size guard allows.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// NaN or Inf appeared inside an iterative method.
class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require_size(std::size_t actual, std::size_t expected, const char* what)
{
    if (actual != expected) {
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) +
                             ", got " + std::to_string(actual));
    }
}

} // namespace pint

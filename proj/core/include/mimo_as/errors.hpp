// SPDX-License-Identifier: Apache-2.0
//
// mimo_as: analytical and Monte Carlo rate evaluation for multi-cell correlated MIMO
// Copyright (C) 2026 The mimo_as authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MIMO_AS_ERRORS_HPP
#define MIMO_AS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mimo_as
{
    // Quadrature produced a non-finite value or failed to converge.
    class EvaluationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Non-positive pivot in a Cholesky factorisation.
    class SingularityError : public std::runtime_error
    {
    public:
        SingularityError(std::size_t pivot, double value)
            : std::runtime_error("matrix is not positive definite: pivot " + std::to_string(pivot) +
                                 " = " + std::to_string(value)),
              pivot_index(pivot), pivot_value(value)
        {
        }
        std::size_t pivot_index;
        double pivot_value;
    };

    // A result violated an algebraic identity beyond its rounding band.
    class NumericalConsistencyError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Input matrix lacks the structure an operation relies on (e.g. Toeplitz).
    class StructureError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class GeometryError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &key, int line, const std::string &what)
            : std::runtime_error(format(key, line, what)), key(key), line(line)
        {
        }
        std::string key;
        int line; // 1-based, 0 when unknown

    private:
        static std::string format(const std::string &key, int line, const std::string &what)
        {
            std::string s = "config";
            if (line > 0)
                s += ":" + std::to_string(line);
            if (!key.empty())
                s += " [" + key + "]";
            return s + ": " + what;
        }
    };
}

#endif

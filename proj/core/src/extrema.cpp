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

#include "mimo_as/extrema.hpp"

#include <cmath>
#include <stdexcept>

namespace mimo_as
{
    namespace
    {
        // sign = +1 for a minimum (neighbours must be higher), -1 for a maximum.
        bool prominent(std::span<const double> y, std::span<const double> se, std::size_t k, double sign)
        {
            auto err = [&](std::size_t i) { return se.empty() ? 0.0 : se[i]; };
            auto clears = [&](std::size_t i)
            {
                const double rise = sign * (y[i] - y[k]);
                return rise > 0.0 && rise >= 2.0 * std::hypot(err(k), err(i));
            };
            bool left = false;
            for (std::size_t i = k; i-- > 0;)
            {
                if (sign * (y[i] - y[k]) <= 0.0)
                    return false; // an earlier point is at least as extreme
                if (clears(i))
                {
                    left = true;
                    break;
                }
            }
            if (!left)
                return false;
            for (std::size_t i = k + 1; i < y.size(); ++i)
            {
                if (sign * (y[i] - y[k]) < 0.0)
                    return false;
                if (clears(i))
                    return true;
            }
            return false;
        }
    }

    std::vector<CurveExtremum> detect_extrema(std::span<const double> y, std::span<const double> se)
    {
        if (!se.empty() && se.size() != y.size())
            throw std::invalid_argument("detect_extrema: stderr length mismatch");
        std::vector<CurveExtremum> out;
        for (std::size_t k = 1; k + 1 < y.size(); ++k)
        {
            if (prominent(y, se, k, 1.0))
                out.push_back({ExtremumKind::minimum, k});
            else if (prominent(y, se, k, -1.0))
                out.push_back({ExtremumKind::maximum, k});
        }
        return out;
    }
}

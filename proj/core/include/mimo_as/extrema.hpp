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

#ifndef MIMO_AS_EXTREMA_HPP
#define MIMO_AS_EXTREMA_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mimo_as
{
    enum class ExtremumKind
    {
        minimum,
        maximum
    };

    struct CurveExtremum
    {
        ExtremumKind kind;
        std::size_t index;
    };

    // Interior extrema of a sampled curve. A minimum at k is reported when k is the first lowest
    // point of some window [l, r] with l < k < r whose end points rise above y[k] by more than zero
    // and by at least 2 sqrt(se_k^2 + se_end^2); maxima likewise. With zero stderr this reduces to
    // strict local extrema with plateaus collapsed to their first point. `stderr` may be empty.
    std::vector<CurveExtremum> detect_extrema(std::span<const double> y, std::span<const double> stderr = {});
}

#endif

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

#ifndef MIMO_AS_SWEEP_HPP
#define MIMO_AS_SWEEP_HPP

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/config.hpp"
#include "mimo_as/extrema.hpp"
#include "mimo_as/geometry.hpp"
#include "mimo_as/montecarlo.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mimo_as
{
    struct SweepRow
    {
        std::size_t m = 0;
        double as_deg = 0.0;
        Precoder precoder = Precoder::ebf;
        Source engine = Source::analytic;
        PowerBreakdown powers;
    };

    struct Extremum
    {
        ExtremumKind kind = ExtremumKind::minimum;
        double as_deg = 0.0;
        double rate = 0.0;
        std::size_t m = 0;
        Precoder precoder = Precoder::ebf;
        Source engine = Source::analytic; // curve the detection ran on
    };

    struct SweepResult
    {
        ScenarioConfig config;
        Layout layout;
        std::vector<SweepRow> rows;        // sorted by (precoder, m, as_deg, engine)
        std::vector<Extremum> extrema;
        std::vector<std::string> notices;
    };

    using SweepLog = std::function<void(const std::string &)>;

    // Evaluates m_grid x as_grid x precoders x engines. Analytic RZF is skipped with a notice.
    // Extrema come from the analytic curve when present, else from the MC curve with its stderr.
    // Output is identical for every worker count.
    SweepResult run_sweep(const ScenarioConfig &cfg, const SweepLog &log = {});

    Layout build_layout(const ScenarioConfig &cfg);

    // Covariances of one (M, AS) point.
    ScenarioCovariances point_covariances(const ScenarioConfig &cfg, const Layout &layout, std::size_t m,
                                          double as_deg);

    // Extrema of the rows of one (precoder, m) curve for one engine.
    std::vector<Extremum> curve_extrema(const std::vector<SweepRow> &rows, Precoder p, std::size_t m, Source engine);
}

#endif

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

#ifndef MIMO_AS_REPORT_HPP
#define MIMO_AS_REPORT_HPP

#include "mimo_as/config.hpp"
#include "mimo_as/sweep.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mimo_as
{
    struct LandmarkCheck
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    struct ReportOptions
    {
        std::filesystem::path out_dir = ".";
        std::optional<std::size_t> n_realizations; // overrides the preset's Monte Carlo budget
        std::optional<std::uint64_t> seed;
        std::size_t workers = 0;                   // 0: default_workers()
        SweepLog log;
    };

    struct ReportSummary
    {
        std::string preset;
        std::vector<std::filesystem::path> files;
        std::vector<LandmarkCheck> checks;
        bool passed() const;
    };

    // Preset names: fig2 .. fig10.
    std::vector<std::string> report_presets();
    std::string preset_description(const std::string &preset);

    // Throws std::invalid_argument for an unknown preset.
    ReportSummary run_report(const std::string &preset, const ReportOptions &opt);

    // Two-cell evaluation scenario with the interfering UE at theta_deg.
    ScenarioConfig two_cell_config(double theta_deg);

    // Five-cell layout truncated to n_cells (2, 3 or 5 in the presets).
    ScenarioConfig multi_cell_config(std::size_t n_cells);

    // Rate curve of one (precoder, m, engine) from sweep rows, sorted by AS.
    struct Curve
    {
        std::vector<double> as_deg;
        std::vector<double> rate;
        std::vector<double> stderr_rate;
    };
    Curve extract_curve(const std::vector<SweepRow> &rows, Precoder p, std::size_t m, Source engine);

    // Extremum of the given kind whose AS lies within tol of target, if any.
    std::optional<Extremum> find_extremum(const std::vector<Extremum> &ex, ExtremumKind kind, std::size_t m,
                                          Precoder p, double target_deg, double tol_deg);

    // True when rate never decreases between consecutive grid points with AS >= from_deg.
    bool non_decreasing_from(const Curve &c, double from_deg);
}

#endif

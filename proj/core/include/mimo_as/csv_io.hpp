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

#ifndef MIMO_AS_CSV_IO_HPP
#define MIMO_AS_CSV_IO_HPP

#include "mimo_as/sweep.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mimo_as
{
    // 17 significant digits, scientific; round-trips every finite double.
    std::string format_double(double v);

    struct SweepFiles
    {
        std::filesystem::path rates;
        std::filesystem::path powers;
        std::filesystem::path extrema;
    };

    // Writes <prefix>rates.csv, <prefix>powers.csv and <prefix>extrema.csv into out_dir (created if
    // needed). Each file starts with "# key=value" lines describing the config and BS positions.
    SweepFiles emit_csv(const SweepResult &res, const std::filesystem::path &out_dir, const std::string &prefix = "");

    struct RatesTable
    {
        std::map<std::string, std::string> header;
        std::vector<SweepRow> rows;
    };

    // Reads a rates file written by emit_csv. Stderr fields other than stderr_rate stay zero.
    RatesTable read_rates_csv(const std::filesystem::path &path);

    // Generic writer for the report datasets: header comments, one column line, numeric rows.
    void write_table_csv(const std::filesystem::path &path, const std::vector<std::pair<std::string, std::string>> &header,
                         const std::vector<std::string> &columns, const std::vector<std::vector<double>> &rows);
}

#endif

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

#ifndef MIMO_AS_CONFIG_HPP
#define MIMO_AS_CONFIG_HPP

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/geometry.hpp"
#include "mimo_as/montecarlo.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mimo_as
{
    // A full experiment description. Defaults are the two-cell evaluation setting.
    struct ScenarioConfig
    {
        std::vector<CellSpec> cells;
        double r1 = 40.0;
        double r2 = 50.0;
        double gamma = 3.0;
        std::optional<double> zeta; // empty: r1^gamma
        double sigma2 = 1.0;
        std::size_t tau = 1;
        std::size_t n_paths = 100;
        double spacing_ratio = 0.5;

        std::vector<double> as_grid_deg = default_as_grid();
        std::vector<std::size_t> m_grid{10};
        std::vector<Precoder> precoders{Precoder::ebf};
        std::vector<Source> engines{Source::analytic};
        bool allow_zero_spread = false;

        std::size_t n_realizations = 100000;
        std::uint64_t seed = 1;
        std::size_t workers = 0; // 0: default_workers()

        double zeta_value() const;
        void validate() const; // throws ConfigError
        static std::vector<double> default_as_grid(); // 2..70 deg, step 2
    };

    ScenarioConfig parse_config(const std::filesystem::path &path);
    ScenarioConfig parse_config_string(const std::string &text);

    // YAML rendering that parse_config_string reads back to an equal config.
    std::string to_yaml(const ScenarioConfig &cfg);

    Source engine_from_string(const std::string &s);
}

#endif

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

#ifndef MIMO_AS_GEOMETRY_HPP
#define MIMO_AS_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace mimo_as
{
    // Largest supported layout: the desired cell plus four neighbours.
    inline constexpr std::size_t max_cells = 5;

    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    double normalize_degrees(double deg); // into [0, 360)
    double deg_to_rad(double deg);
    double rad_to_deg(double rad);

    // Cell `cell_id` and the angle of its UE seen from its own BS, measured from the horizontal axis.
    struct CellSpec
    {
        CellSpec() = default;
        CellSpec(std::size_t id, double angle_deg) : cell_id(id), ue_angle_deg(normalize_degrees(angle_deg)) {}

        std::size_t cell_id = 0;
        double ue_angle_deg = 0.0;
    };

    // Large-scale description of the link from UE `ue` to BS `bs`.
    struct LinkGeometry
    {
        std::size_t ue = 0;
        std::size_t bs = 0;
        double d = 0.0;         // metres
        double los_angle = 0.0; // radians, at the BS from the horizontal axis
        double beta = 0.0;      // zeta / d^gamma
        // Angle at `bs` between the directions to its own UE and to UE `ue`; only for ue != bs.
        std::optional<double> delta_theta;
    };

    struct Layout
    {
        std::vector<Point2> bs_positions;
        std::vector<Point2> ue_positions;
        std::vector<LinkGeometry> links; // row-major in (ue, bs)

        std::size_t n_cells() const { return bs_positions.size(); }
        const LinkGeometry &link(std::size_t ue, std::size_t bs) const { return links.at(ue * n_cells() + bs); }
    };

    // beta = zeta / d^gamma; throws std::domain_error for d <= 0.
    double path_gain(double d, double gamma, double zeta);

    // Position of BS slot `slot` for hexagonal cells of side r2. Slot 0 (the desired cell) sits at the
    // origin; slots 1..4 are adjacent hexagon centres at distance sqrt(3) r2 in the directions
    // 30, 330, 150 and 270 degrees.
    Point2 bs_slot_position(std::size_t slot, double r2);

    // All N^2 links for the cells in `cells` (cell_id must equal the list position). Every UE sits at
    // distance r1 from its own BS; the serving link distance is exactly r1.
    Layout build_layout(const std::vector<CellSpec> &cells, double r1, double r2, double gamma, double zeta);
}

#endif

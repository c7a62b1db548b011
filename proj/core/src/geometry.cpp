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

#include "mimo_as/geometry.hpp"
#include "mimo_as/errors.hpp"
#include "mimo_as/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mimo_as
{
    namespace
    {
        constexpr std::array<double, max_cells> slot_direction_deg = {0.0, 30.0, 330.0, 150.0, 270.0};

        double wrap_pi(double a)
        {
            a = std::fmod(a + pi, 2.0 * pi);
            if (a < 0.0)
                a += 2.0 * pi;
            return a - pi;
        }
    }

    double normalize_degrees(double deg)
    {
        double r = std::fmod(deg, 360.0);
        if (r < 0.0)
            r += 360.0;
        if (r >= 360.0)
            r = 0.0;
        return r;
    }

    double deg_to_rad(double deg) { return deg * pi / 180.0; }
    double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    double path_gain(double d, double gamma, double zeta)
    {
        if (!(d > 0.0))
            throw std::domain_error("path_gain: distance must be > 0");
        return zeta / std::pow(d, gamma);
    }

    Point2 bs_slot_position(std::size_t slot, double r2)
    {
        if (slot >= max_cells)
            throw std::invalid_argument("bs_slot_position: slot " + std::to_string(slot) + " out of range");
        if (slot == 0)
            return {0.0, 0.0};
        const double sep = std::sqrt(3.0) * r2;
        const double a = deg_to_rad(slot_direction_deg[slot]);
        return {sep * std::cos(a), sep * std::sin(a)};
    }

    Layout build_layout(const std::vector<CellSpec> &cells, double r1, double r2, double gamma, double zeta)
    {
        if (cells.empty() || cells.size() > max_cells)
            throw std::invalid_argument("build_layout: number of cells must be in [1, 5]");
        if (!(r1 > 0.0) || !(r1 < r2))
            throw std::invalid_argument("build_layout: requires 0 < r1 < r2");
        if (!(gamma > 0.0) || !(zeta > 0.0))
            throw std::invalid_argument("build_layout: gamma and zeta must be > 0");
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (cells[k].cell_id != k)
                throw std::invalid_argument("build_layout: cell_id must equal the cell's list position");

        const std::size_t n = cells.size();
        Layout layout;
        layout.bs_positions.reserve(n);
        layout.ue_positions.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const Point2 bs = bs_slot_position(k, r2);
            const double th = deg_to_rad(normalize_degrees(cells[k].ue_angle_deg));
            layout.bs_positions.push_back(bs);
            layout.ue_positions.push_back({bs.x + r1 * std::cos(th), bs.y + r1 * std::sin(th)});
        }

        layout.links.reserve(n * n);
        for (std::size_t ue = 0; ue < n; ++ue)
        {
            for (std::size_t bs = 0; bs < n; ++bs)
            {
                LinkGeometry link;
                link.ue = ue;
                link.bs = bs;
                if (ue == bs)
                {
                    link.d = r1;
                    link.los_angle = deg_to_rad(normalize_degrees(cells[ue].ue_angle_deg));
                }
                else
                {
                    const double dx = layout.ue_positions[ue].x - layout.bs_positions[bs].x;
                    const double dy = layout.ue_positions[ue].y - layout.bs_positions[bs].y;
                    link.d = std::hypot(dx, dy);
                    if (!(link.d > 1e-9))
                        throw GeometryError("UE " + std::to_string(ue) + " coincides with BS " + std::to_string(bs));
                    link.los_angle = std::atan2(dy, dx);
                    if (link.los_angle < 0.0)
                        link.los_angle += 2.0 * pi;
                    const double own = deg_to_rad(normalize_degrees(cells[bs].ue_angle_deg));
                    link.delta_theta = std::abs(wrap_pi(link.los_angle - own));
                }
                link.beta = path_gain(link.d, gamma, zeta);
                layout.links.push_back(link);
            }
        }
        return layout;
    }
}

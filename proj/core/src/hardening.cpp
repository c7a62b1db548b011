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

#include "mimo_as/hardening.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mimo_as
{
    namespace
    {
        double correlation_sum(std::span<const cplx> e_table, std::size_t m)
        {
            if (m < 1)
                throw std::invalid_argument("hardening: M must be >= 1");
            if (e_table.size() < m)
                throw std::invalid_argument("hardening: shift table shorter than M");
            KahanSum<double> acc;
            for (std::size_t k = 1; k < m; ++k)
                acc.add(static_cast<double>(m - k) * std::norm(e_table[k]));
            const double md = static_cast<double>(m);
            return (1.0 + 2.0 / md * acc.value()) / md;
        }

        struct Moments
        {
            double n = 0.0, s1 = 0.0, s2 = 0.0;
        };
    }

    double hardening_measure(std::span<const cplx> e_table, std::size_t m, std::size_t n_paths)
    {
        if (n_paths < 1)
            throw std::invalid_argument("hardening: n_paths must be >= 1");
        const double np = static_cast<double>(n_paths);
        return 1.0 / np + (np - 1.0) / np * correlation_sum(e_table, m);
    }

    double hardening_asymptotic(std::span<const cplx> e_table, std::size_t m) { return correlation_sum(e_table, m); }

    EmpiricalHardening empirical_hardening(std::span<const double> x)
    {
        constexpr std::size_t blocks = 100;
        if (x.size() < 1000)
            throw std::invalid_argument("empirical_hardening: need at least 1000 samples, got " +
                                        std::to_string(x.size()));
        // Centre on the first sample to keep the variance sum well conditioned.
        const double shift = x[0];
        std::vector<Moments> per(blocks);
        Moments all;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            auto &b = per[i * blocks / x.size()];
            const double d = x[i] - shift;
            b.n += 1.0, b.s1 += d, b.s2 += d * d;
        }
        for (const auto &b : per)
            all.n += b.n, all.s1 += b.s1, all.s2 += b.s2;

        auto ratio = [shift](const Moments &mo)
        {
            const double mean_d = mo.s1 / mo.n;
            const double var = (mo.s2 - mo.n * mean_d * mean_d) / (mo.n - 1.0);
            const double mean = mean_d + shift;
            return var / (mean * mean);
        };

        EmpiricalHardening out;
        out.samples = x.size();
        out.value = ratio(all);
        std::vector<double> loo(blocks);
        double mean_loo = 0.0;
        for (std::size_t b = 0; b < blocks; ++b)
        {
            Moments mo{all.n - per[b].n, all.s1 - per[b].s1, all.s2 - per[b].s2};
            loo[b] = ratio(mo);
            mean_loo += loo[b] / blocks;
        }
        double ss = 0.0;
        for (double v : loo)
            ss += (v - mean_loo) * (v - mean_loo);
        out.stderr_value = std::sqrt((blocks - 1.0) / blocks * ss);
        return out;
    }
}

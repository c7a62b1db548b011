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

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/covariance.hpp"
#include "mimo_as/geometry.hpp"
#include "mimo_as/montecarlo.hpp"

#include <benchmark/benchmark.h>

using namespace mimo_as;

namespace
{
    const Layout &two_cells()
    {
        static const Layout l = build_layout({CellSpec(0, 0), CellSpec(1, 200)}, 40, 50, 3, 64000);
        return l;
    }

    void covariances(benchmark::State &st)
    {
        const auto m = static_cast<std::size_t>(st.range(0));
        for (auto _ : st)
            benchmark::DoNotOptimize(build_covariances(two_cells(), AngularSpread::from_degrees(30), ArraySpec(m), 1.0, 1));
    }

    template <bool Fast>
    void second_moment(benchmark::State &st)
    {
        const auto m = static_cast<std::size_t>(st.range(0));
        const auto sc = build_covariances(two_cells(), AngularSpread::from_degrees(30), ArraySpec(m), 1.0, 1);
        const auto in = second_moment_inputs(sc, 0, 1, 100);
        for (auto _ : st)
            benchmark::DoNotOptimize(Fast ? second_moment_fast(in) : second_moment_reference(in));
        st.SetComplexityN(st.range(0));
    }

    void rate_point(benchmark::State &st)
    {
        const auto m = static_cast<std::size_t>(st.range(0));
        const auto sc = build_covariances(two_cells(), AngularSpread::from_degrees(30), ArraySpec(m), 1.0, 1);
        for (auto _ : st)
            benchmark::DoNotOptimize(ergodic_rate_point(sc, 100));
    }

    void channel_draw(benchmark::State &st)
    {
        const auto m = static_cast<std::size_t>(st.range(0));
        RngStream rng(1, 2);
        for (auto _ : st)
            benchmark::DoNotOptimize(draw_channel(two_cells().link(0, 0), AngularSpread::from_degrees(30), ArraySpec(m), 100, rng));
    }
}

BENCHMARK(covariances)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(second_moment<true>)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMicrosecond);
BENCHMARK(second_moment<false>)
    ->RangeMultiplier(2)
    ->Range(8, 32)
    ->Complexity([](benchmark::IterationCount n) { return static_cast<double>(n) * n * n * n; })
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(rate_point)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(channel_draw)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

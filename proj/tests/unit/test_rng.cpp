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

#include "catch_amalgamated.hpp"

#include "mimo_as/parallel.hpp"
#include "mimo_as/rng.hpp"

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

using namespace mimo_as;

TEST_CASE("philox known-answer vectors")
{
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    std::vector<std::uint32_t> va, vb, vc, vd;
    for (int i = 0; i < 100; ++i)
    {
        va.push_back(a.next_u32());
        vb.push_back(b.next_u32());
        vc.push_back(c.next_u32());
        vd.push_back(d.next_u32());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);

    std::set<std::uint64_t> keys;
    for (std::uint64_t x = 0; x < 20; ++x)
        for (std::uint64_t y = 0; y < 20; ++y)
            keys.insert(stream_key(x, y, 5));
    CHECK(keys.size() == 400);
    CHECK(stream_key(1, 2, 3) == stream_key(1, 2, 3));
    CHECK(stream_key(1, 2, 3) != stream_key(2, 1, 3));
}

TEST_CASE("distribution moments")
{
    RngStream r(123, 0);
    const int n = 400000;
    double u1 = 0, u2 = 0, umin = 1, umax = 0, g1 = 0, g2 = 0, g4 = 0, c2 = 0;
    cplx cm = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = r.uniform();
        u1 += u;
        u2 += u * u;
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        const double g = r.normal();
        g1 += g;
        g2 += g * g;
        g4 += g * g * g * g;
        const cplx z = r.complex_normal(2.0);
        cm += z;
        c2 += std::norm(z);
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    CHECK(std::abs(u1 / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(u2 / n - 1.0 / 3.0) < 0.003);
    CHECK(std::abs(g1 / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(g2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(g4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
    CHECK(std::abs(cm / static_cast<double>(n)) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(c2 / n - 2.0) < 4.0 * 2.0 / std::sqrt(n));

    for (int i = 0; i < 1000; ++i)
    {
        const cplx q = r.qpsk();
        CHECK(std::abs(std::abs(q) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(q.real()) - std::abs(q.imag())) < 1e-15);
        const double v = r.uniform(-3.0, 5.0);
        CHECK(v > -3.0);
        CHECK(v < 5.0);
    }
}

TEST_CASE("parallel_for covers every index once and rethrows the lowest failure")
{
    for (std::size_t w : {1u, 2u, 7u})
    {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), w, [&](std::size_t i) { hits[i] += 1; });
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
    parallel_for(0, 4, [](std::size_t) { throw std::logic_error("never"); });
    try
    {
        parallel_for(50, 1, [](std::size_t i) {
            if (i == 13 || i == 40)
                throw std::runtime_error("index " + std::to_string(i));
        });
        FAIL("expected an exception");
    }
    catch (const std::runtime_error &e)
    {
        CHECK(std::string(e.what()) == "index 13");
    }
    CHECK(default_workers() >= 1);
}

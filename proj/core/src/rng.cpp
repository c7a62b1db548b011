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

#include "mimo_as/rng.hpp"

#include <cmath>

namespace mimo_as
{
    namespace
    {
        constexpr std::uint32_t mul0 = 0xD2511F53u, mul1 = 0xCD9E8D57u;
        constexpr std::uint32_t weyl0 = 0x9E3779B9u, weyl1 = 0xBB67AE85u;

        std::uint64_t splitmix(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }
    }

    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k)
    {
        for (int r = 0; r < 10; ++r)
        {
            const std::uint64_t p0 = std::uint64_t(mul0) * c[0];
            const std::uint64_t p1 = std::uint64_t(mul1) * c[2];
            const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += weyl0;
            k[1] += weyl1;
        }
        return c;
    }

    std::uint64_t stream_key(std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        return splitmix(splitmix(splitmix(a) ^ b) ^ c);
    }

    RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream_id)
    {
    }

    std::uint32_t RngStream::next_u32()
    {
        if (pos_ == 4)
        {
            buf_ = philox4x32({std::uint32_t(block_), std::uint32_t(block_ >> 32), std::uint32_t(stream_),
                               std::uint32_t(stream_ >> 32)},
                              key_);
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    double RngStream::uniform()
    {
        const std::uint64_t hi = next_u32(), lo = next_u32();
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double RngStream::uniform(double a, double b) { return a + (b - a) * uniform(); }

    double RngStream::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * pi * u2);
        has_spare_ = true;
        return rad * std::cos(2.0 * pi * u2);
    }

    cplx RngStream::complex_normal(double variance)
    {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        return {s * re, s * normal()};
    }

    cplx RngStream::qpsk()
    {
        const std::uint32_t b = next_u32();
        const double h = 1.0 / std::sqrt(2.0);
        return {(b & 1u) ? h : -h, (b & 2u) ? h : -h};
    }
}

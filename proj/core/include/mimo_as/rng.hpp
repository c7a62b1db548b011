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

#ifndef MIMO_AS_RNG_HPP
#define MIMO_AS_RNG_HPP

#include "mimo_as/numerics.hpp"

#include <array>
#include <cstdint>

namespace mimo_as
{
    // Philox4x32-10 counter-based generator. Output depends only on (seed, stream, draw index), so
    // any realisation can be regenerated independently of thread scheduling.
    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

    class RngStream
    {
    public:
        RngStream(std::uint64_t seed, std::uint64_t stream_id);

        std::uint32_t next_u32();
        double uniform();                 // (0, 1), 53-bit resolution
        double uniform(double a, double b);
        double normal();                  // N(0, 1), Box-Muller
        cplx complex_normal(double variance); // CN(0, variance)
        cplx qpsk();                      // unit-energy QPSK symbol

    private:
        std::array<std::uint32_t, 2> key_;
        std::uint64_t stream_;
        std::uint64_t block_ = 0;
        std::array<std::uint32_t, 4> buf_{};
        int pos_ = 4;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

    // Mixes several identifiers into one 64-bit stream id (splitmix64 chain).
    std::uint64_t stream_key(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);
}

#endif

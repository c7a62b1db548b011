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

#ifndef MIMO_AS_HARDENING_HPP
#define MIMO_AS_HARDENING_HPP

#include "mimo_as/numerics.hpp"

#include <cstddef>
#include <span>

namespace mimo_as
{
    // Normalised variance Var{||h||^2} / (E{||h||^2})^2 for the multipath model, from the shift
    // correlations E(0..M-1):
    // 1/N_P + (N_P-1)/(M N_P) * (1 + (2/M) sum_{m=1}^{M-1} (M-m) |E(m)|^2).
    double hardening_measure(std::span<const cplx> e_table, std::size_t m, std::size_t n_paths);

    // Limit of the above for N_P -> infinity: (1/M)(1 + (2/M) sum (M-m)|E(m)|^2).
    double hardening_asymptotic(std::span<const cplx> e_table, std::size_t m);

    struct EmpiricalHardening
    {
        double value = 0.0;
        double stderr_value = 0.0; // delete-one jackknife over 100 blocks
        std::size_t samples = 0;
    };

    // Sample estimate of Var{x} / (E{x})^2 from squared channel norms x = ||h||^2.
    EmpiricalHardening empirical_hardening(std::span<const double> norms_squared);
}

#endif

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

#ifndef MIMO_AS_ANALYTIC_RATE_HPP
#define MIMO_AS_ANALYTIC_RATE_HPP

#include "mimo_as/covariance.hpp"
#include "mimo_as/numerics.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mimo_as
{
    enum class Source
    {
        analytic,
        monte_carlo
    };

    std::string_view to_string(Source s);

    // Power terms of the downlink ergodic rate of one UE. Powers are linear; stderr fields are zero
    // for analytic results.
    struct PowerBreakdown
    {
        double signal = 0.0;
        double self_interference = 0.0;
        double intercell = 0.0;
        double noise = 0.0;
        double rate_bps_hz = 0.0;
        Source source = Source::analytic;
        double stderr_signal = 0.0;
        double stderr_self_interference = 0.0;
        double stderr_intercell = 0.0;
        double stderr_rate = 0.0;

        // log2(1 + signal / (noise + self_interference + intercell)) from the stored fields.
        double recomputed_rate() const;
    };

    double rate_from_powers(double signal, double self_interference, double intercell, double noise);

    struct MomentPair
    {
        double first = 0.0;  // E{h_jj^H w_j}
        double second = 0.0; // E{|h_ji^H w_i|^2}
    };

    // E{h_jj^H w_j} for EBF: the real trace of the estimate covariance.
    double first_moment(const ComplexMatrix &r_hat_jj);

    // E(s) for signed s from a table of non-negative shifts, E(-s) = conj(E(s)).
    cplx shift_lookup(std::span<const cplx> e_table, std::ptrdiff_t s);

    // Fourth-order moment E{h_m^* h_n h_m'^* h_n'} of the multipath channel (0-based indices):
    // (beta^2/N_P) [2 E(n-m+n'-m') + (N_P-1)(E(n-m) E(n'-m') + E(n'-m) E(n-m'))].
    cplx e_phi(std::size_t m, std::size_t n, std::size_t mp, std::size_t np, double beta, std::size_t n_paths,
               std::span<const cplx> e_table);

    // Everything E{|h_ji^H w_i|^2} depends on, for UE j and the EBF precoder of BS i.
    struct SecondMomentInputs
    {
        const ComplexMatrix *filter = nullptr;          // LMMSE filter of BS i for its own UE
        const ComplexMatrix *r_link = nullptr;          // covariance of h_ji
        std::vector<const ComplexMatrix *> r_others;    // covariances of h_ki for every k != j
        double beta = 0.0;                              // path gain of h_ji
        std::size_t n_paths = 1;
        std::span<const cplx> e_table;                  // shift correlations of h_ji, length >= 2M-1
        double sigma2 = 1.0;
        std::size_t tau = 1;
    };

    SecondMomentInputs second_moment_inputs(const ScenarioCovariances &sc, std::size_t ue_j, std::size_t bs_i,
                                            std::size_t n_paths);

    // Literal O(M^4) quadruple sum plus the noise term sigma2 tau tr{F^H R_ji F}.
    double second_moment_reference(const SecondMomentInputs &in);

    // Same value in O(M^3): trace forms for the separable parts and diagonal sums for the coupled
    // E(n-m+n'-m') part.
    double second_moment_fast(const SecondMomentInputs &in);

    // max(second - first^2, 0); throws NumericalConsistencyError below -1e-9 * second.
    double self_interference(double second, double first);

    enum class SecondMomentPath
    {
        fast,
        reference
    };

    // Analytic EBF power breakdown and rate for UE `desired`.
    PowerBreakdown ergodic_rate_point(const ScenarioCovariances &sc, std::size_t n_paths, std::size_t desired = 0,
                                      SecondMomentPath path = SecondMomentPath::fast);
}

#endif

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

#ifndef MIMO_AS_COVARIANCE_HPP
#define MIMO_AS_COVARIANCE_HPP

#include "mimo_as/geometry.hpp"
#include "mimo_as/numerics.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace mimo_as
{
    // Half-width of the uniform AoA support, radians in [0, pi].
    struct AngularSpread
    {
        explicit AngularSpread(double delta_rad);
        static AngularSpread from_degrees(double deg);
        double delta;
    };

    struct ArraySpec
    {
        ArraySpec(std::size_t antennas, double spacing = 0.5);
        std::size_t m;
        double spacing_ratio; // D / lambda
    };

    // Quadrature used for shift correlations up to `max_shift` on the support of `spread`.
    QuadratureSpec default_quadrature(const AngularSpread &spread, double spacing_ratio, std::size_t max_shift);

    // E(s) = E{exp(-j 2 pi s (D/lambda) cos(phi))}, phi ~ U[mean - delta, mean + delta], for s = 0..count-1.
    // delta = 0 uses the closed form exp(-j 2 pi s (D/lambda) cos(mean)).
    std::vector<cplx> shift_correlations(double mean_angle, const AngularSpread &spread, double spacing_ratio,
                                         std::size_t count, const std::optional<QuadratureSpec> &quad = std::nullopt);

    // Toeplitz-Hermitian matrix with A(m, n) = E(m - n), E(-s) = conj(E(s)).
    ComplexMatrix toeplitz_hermitian(std::span<const cplx> first_column, std::size_t m);

    // R^phi(m, n) = E(m - n) for the ULA; integrates only the first column.
    ComplexMatrix angular_covariance(double mean_angle, const AngularSpread &spread, const ArraySpec &array,
                                     const std::optional<QuadratureSpec> &quad = std::nullopt);

    // R_target (sigma2 I + tau sum_l R_l)^-1. Not Hermitian in general.
    ComplexMatrix lmmse_filter(const ComplexMatrix &r_target, std::span<const ComplexMatrix> r_all, double sigma2,
                               std::size_t tau);

    // tau * filter * R, symmetrised.
    ComplexMatrix estimate_covariance(const ComplexMatrix &filter, const ComplexMatrix &r, std::size_t tau);

    // E(m) = R^phi(m, 0) for m = 0..M-1. Throws StructureError if R^phi is not Toeplitz-Hermitian.
    std::vector<cplx> shift_correlation_table(const ComplexMatrix &r_phi);

    // |E(m)|, m = 0..M-1.
    std::vector<double> diagonalization_profile(const ComplexMatrix &r_phi);

    // Second-order statistics of one (UE, BS) link at one sweep point.
    struct CovarianceSet
    {
        double beta = 0.0;
        double mean_angle = 0.0;
        ComplexMatrix r_phi;
        ComplexMatrix r;
        ComplexMatrix filter; // LMMSE filter of this link at its BS
        ComplexMatrix r_hat;
        // Shift correlations E(0..2M-2); the second-moment expression reaches lags up to 2(M-1).
        std::vector<cplx> e_table;
    };

    // All N^2 link statistics for one (layout, spread, array) point.
    struct ScenarioCovariances
    {
        std::size_t n_cells = 0;
        std::size_t m = 0;
        double sigma2 = 1.0;
        std::size_t tau = 1;
        std::vector<CovarianceSet> links; // row-major in (ue, bs)

        const CovarianceSet &link(std::size_t ue, std::size_t bs) const { return links.at(ue * n_cells + bs); }
    };

    ScenarioCovariances build_covariances(const Layout &layout, const AngularSpread &spread, const ArraySpec &array,
                                          double sigma2, std::size_t tau);

    // Debug dump: one row per matrix row, real and imaginary parts interleaved.
    void write_covariance_csv(const CovarianceSet &set, const std::filesystem::path &path);
}

#endif

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

#ifndef MIMO_AS_MONTECARLO_HPP
#define MIMO_AS_MONTECARLO_HPP

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/covariance.hpp"
#include "mimo_as/geometry.hpp"
#include "mimo_as/numerics.hpp"
#include "mimo_as/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace mimo_as
{
    enum class Precoder
    {
        ebf,
        rzf
    };

    std::string_view to_string(Precoder p);
    Precoder precoder_from_string(std::string_view s);

    struct ChannelRealization
    {
        std::size_t ue = 0;
        std::size_t bs = 0;
        ComplexVector h;
        ComplexVector alphas;    // path attenuations, CN(0, beta)
        std::vector<double> aoas; // radians
    };

    // a_m(phi) = exp(-j 2 pi (D/lambda) m cos phi), m = 0..M-1.
    ComplexVector steering_vector(double phi, const ArraySpec &array);

    // (1/sqrt(N_P)) sum_p alpha_p a(phi_p), evaluated with direct exponentials.
    ComplexVector assemble_channel(std::span<const cplx> alphas, std::span<const double> aoas, const ArraySpec &array);

    ChannelRealization draw_channel(const LinkGeometry &link, const AngularSpread &spread, const ArraySpec &array,
                                    std::size_t n_paths, RngStream &rng);

    struct PilotBlock
    {
        std::vector<cplx> symbols;

        std::size_t tau() const { return symbols.size(); }
        void validate() const; // unit modulus, tau >= 1
        static PilotBlock qpsk(std::size_t tau, RngStream &rng);
        static PilotBlock ones(std::size_t tau);
    };

    // y = sum_k (s kron I_M) h_k + n, stacked as tau blocks of M samples; n ~ CN(0, sigma2 I).
    ComplexVector ul_receive(std::span<const ComplexVector> channels, const PilotBlock &pilots, double sigma2,
                             RngStream &rng);

    // h_hat = filter S^H y.
    ComplexVector lmmse_estimate(const ComplexMatrix &filter, const PilotBlock &pilots, const ComplexVector &y);

    // EBF: w = h_hat. RZF: w = (h_hat h_hat^H + sigma2 I)^-1 h_hat = h_hat / (sigma2 + ||h_hat||^2).
    ComplexVector make_precoder(const ComplexVector &h_hat, double sigma2, Precoder kind);

    // Everything a simulated sweep point needs. The pointed-to objects must outlive the call.
    struct ScenarioPoint
    {
        const Layout *layout = nullptr;
        const ScenarioCovariances *cov = nullptr; // filters; unused with perfect CSI
        AngularSpread spread{0.0};
        ArraySpec array{1};
        std::size_t n_paths = 100;
        double sigma2 = 1.0;
        std::size_t tau = 1;
    };

    struct McOptions
    {
        std::size_t n_realizations = 100000;
        std::uint64_t seed = 1;
        Precoder kind = Precoder::ebf;
        bool perfect_csi = false; // h_hat := h
        std::size_t desired = 0;
        std::size_t workers = 1;
    };

    struct EmpiricalStat
    {
        double mean = 0.0;
        double second = 0.0; // E{x^2}
        double stderr_mean = 0.0;
    };

    struct EmpiricalStats
    {
        std::size_t n_samples = 0;
        EmpiricalStat gain_re;                     // Re{h_jj^H w_j}
        EmpiricalStat gain_im;                     // Im{h_jj^H w_j}
        std::vector<EmpiricalStat> cross_power;    // |h_ji^H w_i|^2 per BS i
        std::vector<EmpiricalStat> precoder_power; // ||w_i||^2 per BS i
    };

    struct McEstimate
    {
        PowerBreakdown powers;
        EmpiricalStats stats;
    };

    // Simulates UL training and DL precoding for all cells and estimates the rate terms of UE
    // `desired`. eta_i = 1 / mean ||w_i||^2. Standard errors of derived terms by block jackknife.
    McEstimate estimate_powers(const ScenarioPoint &point, const McOptions &opt);

    enum class CsiMode
    {
        perfect,
        estimated
    };

    struct AngleOptions
    {
        std::size_t ue = 0; // channel h_ji of UE j ...
        std::size_t bs = 1; // ... towards the precoder w_i of BS i
        CsiMode mode = CsiMode::estimated;
        Precoder kind = Precoder::ebf;
        bool iid_bypass = false; // h, w ~ CN(0, I) independent, ignoring the scenario
        std::size_t bins = 90;
        std::size_t n_realizations = 100000;
        std::uint64_t seed = 1;
        std::size_t workers = 1;
    };

    struct AngleSamples
    {
        std::vector<double> angles; // radians in [0, pi/2]; skipped draws removed
        std::size_t skipped = 0;
    };

    // arccos(|h^H w| / (||h|| ||w||)); negative when either norm is zero.
    double precoder_angle(const ComplexVector &h, const ComplexVector &w);

    AngleSamples angle_samples(const ScenarioPoint &point, const AngleOptions &opt);

    struct AngleHistogram
    {
        std::vector<double> edges_deg;
        std::vector<double> density;   // per degree
        std::vector<double> reference; // Loyka bin-averaged density per degree, N = M
        std::size_t samples = 0;
        std::size_t skipped = 0;
        double mean_deg = 0.0;
    };

    double loyka_pdf(double phi, std::size_t n);
    double loyka_cdf(double phi, std::size_t n);

    AngleHistogram angle_histogram(const AngleSamples &s, std::size_t m, std::size_t bins);
    AngleHistogram angle_distribution(const ScenarioPoint &point, const AngleOptions &opt);

    // Columns bin_left_deg, bin_right_deg, density, reference_pdf.
    void write_histogram_csv(const AngleHistogram &h, const std::filesystem::path &path);
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// fzbf - Fresnel-zone wideband beamforming for reconfigurable intelligent surfaces
// Copyright (C) 2026 The fzbf Authors
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

// Phase-shift designs for the RIS.
//
// Profile designs work on the Fresnel-zone axis: the phase psi(a) is shared by every element
// whose route length is 2a, and the element phase is psi evaluated at its own route.
//
//   SPM  psi(a) = 4 pi (fc - B/2) a / c + 4 pi B I2(a) / (c E)
//        where I2 is the double integral of v^2 from a_min and E the integral of v^2, so the
//        instantaneous frequency sweeps [fc - B/2, fc + B/2] in proportion to the cumulative
//        zone energy.
//   GSA  SPM phase plus per-sample offsets refined by alternating projections between a
//        flat in-band target spectrum and unit-modulus zone weights.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fzbf/channel.hpp"
#include "fzbf/fresnel.hpp"

namespace fzbf
{
    struct GsaParams
    {
        int samples = 0;                 // N_S; 0 uses the intensity grid
        int freq_samples = 0;            // K'; 0 means 4 N_S
        double extended_bandwidth_hz = 0; // B'; 0 means 2 B
        int max_iterations = 100;
        double ridge = 1.0; // epsilon in units of |A|_F^2 / N_S
        double tolerance = 1e-6;

        void validate(double bandwidth_hz) const;
    };

    struct GsaReport
    {
        int iterations = 0;
        double initial_residual = 0.0;
        double final_residual = 0.0;
        double ridge = 0.0; // absolute epsilon used
        std::vector<std::string> warnings;
    };

    class PhaseProfile
    {
    public:
        enum class Kind
        {
            spm,
            gsa
        };

        Kind kind = Kind::spm;
        double carrier_hz = 0.0;
        double bandwidth_hz = 0.0; // 0 for a pure carrier profile

        // Sampled zone axis shared with the intensity profile.
        double a_min = 0.0;
        double step = 0.0;
        std::vector<double> v_sq; // v^2 per sample
        std::vector<double> i1;   // cumulative integral of v^2
        std::vector<double> i2;   // cumulative integral of i1
        double energy_a = 0.0;    // integral of v^2 da

        // GSA offsets on their own uniform grid, unwrapped.
        double offset_a_min = 0.0;
        double offset_step = 0.0;
        std::vector<double> offsets;
        GsaReport report;

        std::size_t size() const { return v_sq.size(); }
        double a(std::size_t i) const { return a_min + double(i) * step; }
        double a_max() const { return a(size() - 1); }
        bool pure_carrier() const { return bandwidth_hz == 0.0; }

        // psi(a) - 4 pi fc a / c, the slowly varying part of the phase. Clamped to the grid.
        double excess_phase(double a) const;
        // Full phase psi(a).
        double phase(double a) const;
        // (c / 4 pi) d psi_spm / da: fc - B/2 + B P(a), P the normalized cumulative energy.
        double instantaneous_frequency(double a) const;
        // Offset added on top of the SPM phase (zero for SPM).
        double offset_at(double a) const;

    private:
        double spm_excess(double a) const;
    };

    struct GsResult
    {
        Eigen::VectorXcd w; // lowest-residual unit-modulus iterate
        GsaReport report;
    };

    // Alternating projections for min | |A w| - target | over unit-modulus w: keep the phase of
    // A w with the target magnitude, solve the ridge least squares (A^H A + ridge I) w' = A^H g',
    // normalize each entry. Stops after max_iterations or when the residual changes by less than
    // tolerance (relative).
    GsResult gerchberg_saxton(const Eigen::MatrixXcd &A, const std::vector<double> &target, Eigen::VectorXcd w0,
                              int max_iterations, double ridge, double tolerance);

    // phi_n = 2 pi f (l_br + l_ru) / c mod 2 pi.
    Weights narrowband_phases(const ElementGrid &grid, const Placement &p, double carrier_hz);

    // Contiguous row bands, band i focused at fc - B/2 + (i - 1/2) B / N_sub.
    Weights vsa_phases(const ElementGrid &grid, const Placement &p, double carrier_hz, double bandwidth_hz,
                       int subarrays);

    // Throws when the profile has no energy; returns the pure carrier phase when the
    // delay spread or the bandwidth is zero.
    PhaseProfile spm_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz);

    PhaseProfile gsa_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz,
                             const GsaParams &params, const PhaseProfile &init);
    PhaseProfile gsa_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz,
                             const GsaParams &params = {});

    // phi_n = psi((l_br + l_ru) / 2) mod 2 pi.
    Weights profile_to_weights(const PhaseProfile &profile, const ElementGrid &grid, const Placement &p);

    // Rounds each phase to the nearest multiple of 2 pi / 2^bits.
    Weights quantize_weights(const Weights &w, int bits);

    // Columns n, n1, n2, phi_rad, phi_quantized. Quantized column repeats phi when bits is 0.
    void write_weights_csv(const Weights &w, const ElementGrid &grid, int bits, std::ostream &os);
}

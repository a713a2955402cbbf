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

// Beam-split characterization and the achievable-rate upper bound.

#pragma once

#include <span>

#include "fzbf/channel.hpp"
#include "fzbf/fresnel.hpp"
#include "fzbf/spectrum.hpp"

namespace fzbf
{
    // 3 dB full width of |sinc(x)|^2 in units of 1 / width of the rectangle.
    inline constexpr double sinc_half_power_width = 0.886;

    // Narrowband (carrier-focused) response, the transform of v_t evaluated at f - fc.
    std::complex<double> narrowband_gain(const IntensityProfile &profile, double f);
    GainSpectrum narrowband_spectrum(const IntensityProfile &profile, std::span<const double> freqs);

    struct SplitMetrics
    {
        double iota = 0.0;
        double b3db_exact = 0.0;
        double b3db_approx = 0.0; // c * 0.886 / (iota D); infinite when iota = 0
        double gamma = 0.0;       // b3db_exact * iota * D / c; NaN when iota = 0
        double f_low = 0.0;       // half-power crossings of |g_narr|^2
        double f_high = 0.0;

        bool gamma_defined() const;
    };

    // Direction factor |(x_bs / R_br + x_ue / R_ru, y_bs / R_br + y_ue / R_ru)|.
    double iota_factor(const Placement &p);

    SplitMetrics split_metrics(const Placement &p, const SystemConfig &config);
    SplitMetrics split_metrics(const Placement &p, const SystemConfig &config, const IntensityProfile &profile);

    // Flat in-band gain sqrt(E_g / B), zero elsewhere.
    struct IdealSpectrum
    {
        double level = 0.0;
        double carrier_hz = 0.0;
        double bandwidth_hz = 0.0;

        double operator()(double f) const;
        double energy() const { return level * level * bandwidth_hz; }
    };

    IdealSpectrum ideal_gain(const IntensityProfile &profile, const SystemConfig &config);
    IdealSpectrum ideal_gain(double energy, double carrier_hz, double bandwidth_hz);

    // B log2(1 + S_x E_g / (B S_sigma)).
    double rate_upper_bound(double energy, const LinkBudget &lb);
    double rate_upper_bound(const IntensityProfile &profile, const LinkBudget &lb);
}

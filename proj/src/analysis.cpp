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

#include "fzbf/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fzbf
{
    std::complex<double> narrowband_gain(const IntensityProfile &profile, double f)
    {
        // Phases are taken relative to a_min so the summand rotates slowly.
        const double k = -2.0 * two_pi * (f - profile.carrier_hz) / speed_of_light;
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < profile.size(); ++i)
            acc += profile.weight(i) * profile.v[i] * std::polar(1.0, k * (profile.a(i) - profile.a_min));
        return acc * std::polar(1.0, k * profile.a_min);
    }

    GainSpectrum narrowband_spectrum(const IntensityProfile &profile, std::span<const double> freqs)
    {
        GainSpectrum s;
        s.method = SpectrumMethod::fresnel_fast;
        s.freqs.assign(freqs.begin(), freqs.end());
        s.gains.resize(freqs.size());
        const long long n = (long long)freqs.size();
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < n; ++k)
            s.gains[std::size_t(k)] = narrowband_gain(profile, freqs[std::size_t(k)]);
        return s;
    }

    bool SplitMetrics::gamma_defined() const
    {
        return std::isfinite(gamma);
    }

    double iota_factor(const Placement &p)
    {
        const double rb = p.bs_distance(), ru = p.ue_distance();
        return std::hypot(p.bs.x() / rb + p.ue.x() / ru, p.bs.y() / rb + p.ue.y() / ru);
    }

    namespace
    {
        // Offset from fc (signed direction) where |g|^2 first falls to half its peak.
        double half_power_offset(const IntensityProfile &profile, double direction, double scan_step, double tol)
        {
            const double fc = profile.carrier_hz;
            const double half = 0.5 * std::norm(narrowband_gain(profile, fc));
            auto above = [&](double off) { return std::norm(narrowband_gain(profile, fc + direction * off)) > half; };

            double lo = 0.0, hi = scan_step;
            int guard = 0;
            while (above(hi))
            {
                lo = hi;
                hi *= 2.0;
                if (++guard > 200)
                    throw std::runtime_error("half-power point not bracketed");
            }
            // Walk the bracket in fine steps so the first crossing is the one refined.
            const double fine = (hi - lo) / 16.0;
            for (double probe = lo + fine; probe < hi; probe += fine)
            {
                if (!above(probe))
                {
                    hi = probe;
                    break;
                }
                lo = probe;
            }
            while (hi - lo > tol)
            {
                const double mid = 0.5 * (lo + hi);
                (above(mid) ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
    }

    SplitMetrics split_metrics(const Placement &p, const SystemConfig &config)
    {
        const FresnelFrame frame = build_frame(p);
        return split_metrics(p, config, intensity_profile(frame, config, p));
    }

    SplitMetrics split_metrics(const Placement &p, const SystemConfig &config, const IntensityProfile &profile)
    {
        const SystemConfig r = config.resolved();
        SplitMetrics m;
        m.iota = iota_factor(p);
        const double side = r.side_m;
        const double spread = profile.delay().spread();
        // Initial bracket c / (iota D) from the sinc law; the delay spread bounds it when iota -> 0.
        double scan = 0.25 / std::max(spread, 1e-15);
        if (m.iota > 1e-12)
            scan = std::min(scan, 0.25 * speed_of_light / (m.iota * side));
        const double tol = 1e-6 * r.bandwidth_hz;
        const double up = half_power_offset(profile, +1.0, scan, tol);
        const double down = half_power_offset(profile, -1.0, scan, tol);
        m.f_high = profile.carrier_hz + up;
        m.f_low = profile.carrier_hz - down;
        m.b3db_exact = up + down;
        if (m.iota > 1e-12)
        {
            m.b3db_approx = speed_of_light * sinc_half_power_width / (m.iota * side);
            m.gamma = m.b3db_exact * m.iota * side / speed_of_light;
        }
        else
        {
            m.b3db_approx = std::numeric_limits<double>::infinity();
            m.gamma = std::numeric_limits<double>::quiet_NaN();
        }
        return m;
    }

    double IdealSpectrum::operator()(double f) const
    {
        return std::abs(f - carrier_hz) <= 0.5 * bandwidth_hz ? level : 0.0;
    }

    IdealSpectrum ideal_gain(double energy, double carrier_hz, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0) || energy < 0.0)
            throw std::invalid_argument("ideal gain needs positive bandwidth and nonnegative energy");
        return {std::sqrt(energy / bandwidth_hz), carrier_hz, bandwidth_hz};
    }

    IdealSpectrum ideal_gain(const IntensityProfile &profile, const SystemConfig &config)
    {
        return ideal_gain(profile.energy(), config.carrier_hz, config.bandwidth_hz);
    }

    double rate_upper_bound(double energy, const LinkBudget &lb)
    {
        lb.validate();
        const double B = lb.bandwidth_hz;
        return B * std::log2(1.0 + lb.signal_psd() * energy / (B * lb.noise_psd_w_hz));
    }

    double rate_upper_bound(const IntensityProfile &profile, const LinkBudget &lb)
    {
        return rate_upper_bound(profile.energy(), lb);
    }
}

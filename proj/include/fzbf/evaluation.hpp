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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fzbf/analysis.hpp"
#include "fzbf/beamformers.hpp"
#include "fzbf/channel.hpp"
#include "fzbf/fresnel.hpp"
#include "fzbf/spectrum.hpp"

namespace fzbf
{
    enum class Method
    {
        narrowband,
        vsa,
        fz_spm,
        fz_gsa,
        upper_bound,
        optimal
    };

    std::string_view to_string(Method m);
    // Throws std::invalid_argument on an unknown name.
    Method parse_method(std::string_view name);
    std::vector<Method> all_methods();
    // True for methods that produce RIS weights.
    bool has_weights(Method m);

    struct DesignOptions
    {
        int vsa_subarrays = 4;
        GsaParams gsa;
        std::optional<int> quantize_bits;
        AmplitudeModel amplitude = AmplitudeModel::centered;
        // Scale the fast path by (fc / f)^2 so it follows the frequency dependence of the
        // element amplitudes; off reproduces the frozen-amplitude transform exactly.
        bool frequency_scaling = true;
    };

    // BS at (6.4, 5, 14.4) m and UE at (-4.8, 5, 6.4) m, used when no placement is given.
    Placement demo_placement();

    // Everything derived from one configuration and placement.
    struct Scene
    {
        SystemConfig config; // resolved
        Placement placement;
        ElementGrid grid;
        FresnelFrame frame;
        IntensityProfile profile;
        LinkBudget budget;

        static Scene build(const SystemConfig &config, const Placement &p,
                           AmplitudeModel amplitude = AmplitudeModel::centered);
    };

    // A zone-constant piece of a design: the intensity of the elements it covers and the
    // phase they follow.
    struct ZoneComponent
    {
        IntensityProfile intensity;
        PhaseProfile phase;
    };

    struct Design
    {
        Method method = Method::narrowband;
        Weights weights;
        std::vector<ZoneComponent> components; // fast-path description
    };

    // Throws for upper_bound and optimal, which have no weights.
    Design design(const Scene &scene, Method method, const DesignOptions &options = {});

    // Fresnel fast path: trapezoid sum of v(a) e^{j psi(a)} e^{-j 4 pi f a / c} per component.
    GainSpectrum gain_spectrum(const Scene &scene, std::span<const ZoneComponent> components,
                               std::span<const double> freqs, bool frequency_scaling = true);
    // Discrete element oracle.
    GainSpectrum gain_spectrum(const Scene &scene, const Weights &w, std::span<const double> freqs,
                               Exec exec = Exec::parallel);
    // Exact multi-antenna BS model.
    GainSpectrum gain_spectrum(const Scene &scene, const Weights &w, const BSArray &bs,
                               std::span<const double> freqs, Exec exec = Exec::parallel);
    // Samples of the ideal flat spectrum.
    GainSpectrum gain_spectrum(const IdealSpectrum &ideal, std::span<const double> freqs);

    // sum_k (B / K) log2(1 + |g_k|^2 P_t / (S_sigma B)) at the K subcarrier centers. The
    // spectrum is used as is when it sits on those centers and linearly interpolated in
    // |g|^2 otherwise; throws when it does not cover them.
    double achievable_rate(const GainSpectrum &spectrum, const LinkBudget &lb, double carrier_hz, int subcarriers);

    // Rate of a method at one scene, evaluated with the discrete oracle.
    double method_rate(const Scene &scene, Method method, const DesignOptions &options = {});

    // In-band relative L2 distance sqrt(sum |a - b|^2 / sum |b|^2) over frequencies inside
    // [fc - B/2, fc + B/2].
    double inband_relative_l2(const GainSpectrum &a, const GainSpectrum &b, double carrier_hz, double bandwidth_hz);

    // max / min of |g|^2 over in-band samples, in dB.
    double inband_ripple_db(const GainSpectrum &s, double carrier_hz, double bandwidth_hz);
    // Trapezoid energy of |g|^2 over samples outside the band.
    double out_of_band_energy(const GainSpectrum &s, double carrier_hz, double bandwidth_hz);

    enum class SweepVariable
    {
        tx_power,
        side,
        bandwidth,
        route_length,
        n_bs
    };

    std::string_view to_string(SweepVariable v);
    SweepVariable parse_sweep_variable(std::string_view name);

    struct ExperimentSpec
    {
        SweepVariable variable = SweepVariable::tx_power;
        std::vector<double> values = {0.0, 10.0, 20.0, 30.0};
        std::vector<Method> methods = all_methods();
        int trials = 20;
        std::uint64_t seed = 1;
        DistanceRange bs_range;
        DistanceRange ue_range;
        std::optional<Placement> placement; // fixed placement instead of sampling
        DesignOptions design;
        // Also evaluate designs with the exact multi-antenna BS model.
        bool exact_bs = false;
        double bs_spacing_m = 0.0; // 0 means half a carrier wavelength

        void validate() const;
    };

    struct CellResult
    {
        double value = 0.0;
        std::string method;
        double mean_rate_bps = 0.0;
        double stderr_bps = 0.0;
        int trials = 0;
        int failures = 0;
        std::string error;
    };

    struct SweepResult
    {
        std::vector<CellResult> cells;
        const CellResult *find(double value, std::string_view method) const;
    };

    // Placement of the given trial. Route-length sweeps draw the BS distance uniformly in
    // [0.35 L, 0.65 L] and give the UE the remainder.
    Placement trial_placement(const ExperimentSpec &experiment, double sweep_value, std::uint64_t index);

    // Configuration with the sweep variable applied.
    SystemConfig apply_sweep_value(const SystemConfig &config, SweepVariable variable, double value);

    SweepResult run_sweep(const ExperimentSpec &experiment, const SystemConfig &config);

    // Columns sweep_value, method, mean_rate_bps, stderr, trials, failures.
    void write_sweep_csv(const SweepResult &result, std::ostream &os);
    void write_spectrum_csv(std::span<const GainSpectrum> spectra, std::span<const std::string> names,
                            std::ostream &os);
}

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

#include "fzbf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fzbf/csv.hpp"
#include "fzbf/kernels.hpp"

namespace fzbf
{
    namespace
    {
        constexpr std::pair<Method, std::string_view> method_names[] = {
            {Method::narrowband, "narrowband"}, {Method::vsa, "vsa"},
            {Method::fz_spm, "fz-spm"},         {Method::fz_gsa, "fz-gsa"},
            {Method::upper_bound, "upper-bound"}, {Method::optimal, "optimal"},
        };

        constexpr std::pair<SweepVariable, std::string_view> sweep_names[] = {
            {SweepVariable::tx_power, "tx_power"},
            {SweepVariable::side, "D"},
            {SweepVariable::bandwidth, "B"},
            {SweepVariable::route_length, "route_length"},
            {SweepVariable::n_bs, "N_BS"},
        };

        bool in_band(double f, double fc, double B)
        {
            return std::abs(f - fc) <= 0.5 * B * (1.0 + 1e-12);
        }
    }

    std::string_view to_string(Method m)
    {
        for (const auto &[k, name] : method_names)
            if (k == m)
                return name;
        return "unknown";
    }

    Method parse_method(std::string_view name)
    {
        for (const auto &[k, n] : method_names)
            if (n == name)
                return k;
        throw std::invalid_argument("unknown method '" + std::string(name) + "'");
    }

    std::vector<Method> all_methods()
    {
        std::vector<Method> out;
        for (const auto &entry : method_names)
            out.push_back(entry.first);
        return out;
    }

    bool has_weights(Method m)
    {
        return m != Method::upper_bound && m != Method::optimal;
    }

    std::string_view to_string(SweepVariable v)
    {
        for (const auto &[k, name] : sweep_names)
            if (k == v)
                return name;
        return "unknown";
    }

    SweepVariable parse_sweep_variable(std::string_view name)
    {
        for (const auto &[k, n] : sweep_names)
            if (n == name)
                return k;
        throw std::invalid_argument("unknown sweep variable '" + std::string(name) + "'");
    }

    Placement demo_placement()
    {
        return {Vec3(6.4, 5.0, 14.4), Vec3(-4.8, 5.0, 6.4)};
    }

    Scene Scene::build(const SystemConfig &config, const Placement &p, AmplitudeModel amplitude)
    {
        p.validate();
        Scene s;
        s.config = config.resolved();
        s.placement = p;
        s.grid = build_ris_grid(s.config);
        s.frame = build_frame(p);
        s.profile = intensity_profile(s.frame, s.config, p, amplitude);
        s.budget = LinkBudget::from_config(s.config);
        return s;
    }

    Design design(const Scene &scene, Method method, const DesignOptions &options)
    {
        const SystemConfig &c = scene.config;
        const double fc = c.carrier_hz, B = c.bandwidth_hz;
        Design d;
        d.method = method;
        switch (method)
        {
        case Method::narrowband:
            d.weights = narrowband_phases(scene.grid, scene.placement, fc);
            d.components.push_back({scene.profile, spm_profile(scene.profile, fc, 0.0)});
            break;
        case Method::vsa:
        {
            const int n_sub = options.vsa_subarrays;
            d.weights = vsa_phases(scene.grid, scene.placement, fc, B, n_sub);
            const Aperture full = aperture_of(c);
            const double band_width = 2.0 * full.half_x / n_sub;
            for (int i = 0; i < n_sub; ++i)
            {
                Aperture ap = full;
                ap.half_x = 0.5 * band_width;
                ap.center_x = -full.half_x + (i + 0.5) * band_width;
                IntensityProfile part = intensity_profile(scene.frame, c, scene.placement, ap, options.amplitude);
                const double fi = fc - 0.5 * B + (i + 0.5) * B / n_sub;
                PhaseProfile ph = spm_profile(part, fi, 0.0);
                d.components.push_back({std::move(part), std::move(ph)});
            }
            break;
        }
        case Method::fz_spm:
        {
            PhaseProfile ph = spm_profile(scene.profile, fc, B);
            d.weights = profile_to_weights(ph, scene.grid, scene.placement);
            d.components.push_back({scene.profile, std::move(ph)});
            break;
        }
        case Method::fz_gsa:
        {
            PhaseProfile ph = gsa_profile(scene.profile, fc, B, options.gsa);
            d.weights = profile_to_weights(ph, scene.grid, scene.placement);
            d.components.push_back({scene.profile, std::move(ph)});
            break;
        }
        default:
            throw std::invalid_argument("method '" + std::string(to_string(method)) + "' has no weights");
        }
        if (options.quantize_bits)
            d.weights = quantize_weights(d.weights, *options.quantize_bits);
        return d;
    }

    GainSpectrum gain_spectrum(const Scene &scene, std::span<const ZoneComponent> components,
                               std::span<const double> freqs, bool frequency_scaling)
    {
        GainSpectrum s;
        s.method = SpectrumMethod::fresnel_fast;
        s.freqs.assign(freqs.begin(), freqs.end());
        s.gains.assign(freqs.size(), cd(0.0, 0.0));
        const double fc = scene.config.carrier_hz;
        for (const ZoneComponent &comp : components)
        {
            const IntensityProfile &v = comp.intensity;
            const PhaseProfile &ph = comp.phase;
            std::vector<cd> base(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                base[i] = v.weight(i) * v.v[i] * std::polar(1.0, ph.excess_phase(v.a(i)));
            const long long nf = (long long)freqs.size();
#pragma omp parallel for schedule(static)
            for (long long k = 0; k < nf; ++k)
            {
                const double df = freqs[std::size_t(k)] - ph.carrier_hz;
                const cd rot = kernels::delay_phasor(df, 2.0 * v.step);
                cd e(1.0, 0.0), acc(0.0, 0.0);
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    if (i % kernels::chunk_size == 0)
                        e = kernels::delay_phasor(df, 2.0 * (v.a(i) - v.a_min));
                    acc += base[i] * e;
                    e *= rot;
                }
                s.gains[std::size_t(k)] += acc * kernels::delay_phasor(df, 2.0 * v.a_min);
            }
        }
        if (frequency_scaling)
            for (std::size_t k = 0; k < freqs.size(); ++k)
                s.gains[k] *= (fc / freqs[k]) * (fc / freqs[k]);
        return s;
    }

    GainSpectrum gain_spectrum(const Scene &scene, const Weights &w, std::span<const double> freqs, Exec exec)
    {
        GainSpectrum s;
        s.method = SpectrumMethod::discrete_oracle;
        s.freqs.assign(freqs.begin(), freqs.end());
        s.gains = discrete_spectrum(scene.grid, scene.placement, w, freqs, scene.config.n_bs, exec);
        return s;
    }

    GainSpectrum gain_spectrum(const Scene &scene, const Weights &w, const BSArray &bs, std::span<const double> freqs,
                               Exec exec)
    {
        GainSpectrum s;
        s.method = SpectrumMethod::exact_bs;
        s.freqs.assign(freqs.begin(), freqs.end());
        s.gains = exact_bs_spectrum(scene.grid, scene.placement, bs, w, freqs, exec);
        return s;
    }

    GainSpectrum gain_spectrum(const IdealSpectrum &ideal, std::span<const double> freqs)
    {
        GainSpectrum s;
        s.method = SpectrumMethod::ideal;
        s.freqs.assign(freqs.begin(), freqs.end());
        s.gains.resize(freqs.size());
        for (std::size_t k = 0; k < freqs.size(); ++k)
            s.gains[k] = ideal(freqs[k]);
        return s;
    }

    double achievable_rate(const GainSpectrum &spectrum, const LinkBudget &lb, double carrier_hz, int subcarriers)
    {
        lb.validate();
        spectrum.validate();
        const double B = lb.bandwidth_hz;
        const std::vector<double> fk = subcarrier_frequencies(carrier_hz, B, subcarriers);
        const double snr_scale = lb.tx_power_w / (lb.noise_psd_w_hz * B);
        const double tol = 1e-6 * B / subcarriers;
        const std::size_t K = fk.size();

        std::vector<double> power(K);
        const bool aligned = spectrum.size() == K &&
                             std::equal(fk.begin(), fk.end(), spectrum.freqs.begin(),
                                        [tol](double a, double b) { return std::abs(a - b) <= tol; });
        if (aligned)
        {
            for (std::size_t k = 0; k < K; ++k)
                power[k] = std::norm(spectrum.gains[k]);
        }
        else
        {
            if (spectrum.size() == 0 || spectrum.freqs.front() > fk.front() + tol ||
                spectrum.freqs.back() < fk.back() - tol)
                throw std::invalid_argument("spectrum does not cover the subcarriers");
            const std::vector<double> p = spectrum.power();
            for (std::size_t k = 0; k < K; ++k)
            {
                const double f = fk[k];
                auto it = std::upper_bound(spectrum.freqs.begin(), spectrum.freqs.end(), f);
                if (it == spectrum.freqs.begin())
                    power[k] = p.front();
                else if (it == spectrum.freqs.end())
                    power[k] = p.back();
                else
                {
                    const std::size_t j = std::size_t(it - spectrum.freqs.begin());
                    const double w = (f - spectrum.freqs[j - 1]) / (spectrum.freqs[j] - spectrum.freqs[j - 1]);
                    power[k] = (1.0 - w) * p[j - 1] + w * p[j];
                }
            }
        }
        double rate = 0.0;
        for (double p : power)
            rate += std::log1p(p * snr_scale);
        return rate * B / double(K) / std::log(2.0);
    }

    double method_rate(const Scene &scene, Method method, const DesignOptions &options)
    {
        const SystemConfig &c = scene.config;
        if (method == Method::upper_bound)
            return rate_upper_bound(scene.profile, scene.budget);
        const std::vector<double> fk = subcarrier_frequencies(c.carrier_hz, c.bandwidth_hz, c.subcarriers);
        if (method == Method::optimal)
            return achievable_rate(gain_spectrum(ideal_gain(scene.profile, c), fk), scene.budget, c.carrier_hz,
                                   c.subcarriers);
        const Design d = design(scene, method, options);
        return achievable_rate(gain_spectrum(scene, d.weights, fk), scene.budget, c.carrier_hz, c.subcarriers);
    }

    double inband_relative_l2(const GainSpectrum &a, const GainSpectrum &b, double carrier_hz, double bandwidth_hz)
    {
        if (a.size() != b.size())
            throw std::invalid_argument("spectra have different sizes");
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
        {
            if (std::abs(a.freqs[k] - b.freqs[k]) > 1e-6 * bandwidth_hz)
                throw std::invalid_argument("spectra are sampled on different grids");
            if (!in_band(a.freqs[k], carrier_hz, bandwidth_hz))
                continue;
            num += std::norm(a.gains[k] - b.gains[k]);
            den += std::norm(b.gains[k]);
        }
        if (!(den > 0.0))
            throw std::invalid_argument("reference spectrum has no in-band energy");
        return std::sqrt(num / den);
    }

    double inband_ripple_db(const GainSpectrum &s, double carrier_hz, double bandwidth_hz)
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k)
        {
            if (!in_band(s.freqs[k], carrier_hz, bandwidth_hz))
                continue;
            const double p = std::norm(s.gains[k]);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        if (!(hi > 0.0))
            throw std::invalid_argument("spectrum has no in-band gain");
        return 10.0 * std::log10(hi / lo);
    }

    double out_of_band_energy(const GainSpectrum &s, double carrier_hz, double bandwidth_hz)
    {
        double e = 0.0;
        for (std::size_t k = 0; k + 1 < s.size(); ++k)
        {
            const double fa = s.freqs[k], fb = s.freqs[k + 1];
            if (in_band(fa, carrier_hz, bandwidth_hz) || in_band(fb, carrier_hz, bandwidth_hz))
                continue;
            e += 0.5 * (fb - fa) * (std::norm(s.gains[k]) + std::norm(s.gains[k + 1]));
        }
        return e;
    }

    void ExperimentSpec::validate() const
    {
        if (values.empty())
            throw std::invalid_argument("sweep needs at least one value");
        if (methods.empty())
            throw std::invalid_argument("sweep needs at least one method");
        if (trials < 1)
            throw std::invalid_argument("sweep needs at least one trial");
        if (bs_spacing_m < 0.0)
            throw std::invalid_argument("BS antenna spacing must be nonnegative");
        design.gsa.validate(0.0);
        if (variable == SweepVariable::route_length)
            for (double v : values)
                if (!(v > 0.0))
                    throw std::invalid_argument("route lengths must be positive");
        if (variable == SweepVariable::n_bs)
            for (double v : values)
                if (!(v >= 1.0) || v != std::floor(v))
                    throw std::invalid_argument("BS antenna counts must be positive integers");
    }

    const CellResult *SweepResult::find(double value, std::string_view method) const
    {
        for (const CellResult &c : cells)
            if (c.value == value && c.method == method)
                return &c;
        return nullptr;
    }

    Placement trial_placement(const ExperimentSpec &experiment, double sweep_value, std::uint64_t index)
    {
        if (experiment.placement)
            return *experiment.placement;
        const std::uint64_t seed = rng::trial_seed(experiment.seed, index);
        if (experiment.variable != SweepVariable::route_length)
            return sample_placement(seed, experiment.bs_range, experiment.ue_range);
        const double L = sweep_value;
        const double u = double(rng::splitmix64(seed ^ 0x5851F42D4C957F2DULL) >> 11) * 0x1.0p-53;
        const double r_bs = (0.35 + 0.3 * u) * L;
        return sample_placement(seed, {r_bs, r_bs}, {L - r_bs, L - r_bs});
    }

    SystemConfig apply_sweep_value(const SystemConfig &config, SweepVariable variable, double value)
    {
        SystemConfig c = config;
        switch (variable)
        {
        case SweepVariable::tx_power:
            c.tx_power_dbm = value;
            break;
        case SweepVariable::side:
            c.side_m = value;
            c.n1 = c.n2 = 0;
            break;
        case SweepVariable::bandwidth:
            c.bandwidth_hz = value;
            break;
        case SweepVariable::route_length:
            break;
        case SweepVariable::n_bs:
            c.n_bs = int(value);
            break;
        }
        return c.resolved();
    }

    namespace
    {
        std::pair<int, int> array_shape(int m)
        {
            int n1 = int(std::floor(std::sqrt(double(m))));
            while (m % n1 != 0)
                --n1;
            return {n1, m / n1};
        }

        struct Accumulator
        {
            std::vector<double> rates;
            int failures = 0;
            std::string error;
        };
    }

    SweepResult run_sweep(const ExperimentSpec &experiment, const SystemConfig &config)
    {
        experiment.validate();
        SweepResult result;
        for (double value : experiment.values)
        {
            const SystemConfig cfg = apply_sweep_value(config, experiment.variable, value);
            std::vector<std::string> names;
            for (Method m : experiment.methods)
                names.emplace_back(to_string(m));
            if (experiment.exact_bs)
                for (Method m : experiment.methods)
                    if (has_weights(m))
                        names.push_back(std::string(to_string(m)) + "/exact-bs");
            std::vector<Accumulator> acc(names.size());

            for (int t = 0; t < experiment.trials; ++t)
            {
                std::optional<Scene> scene;
                try
                {
                    scene = Scene::build(cfg, trial_placement(experiment, value, std::uint64_t(t)), experiment.design.amplitude);
                }
                catch (const std::exception &e)
                {
                    for (Accumulator &a : acc)
                        if (a.failures++ == 0)
                            a.error = e.what();
                    continue;
                }
                const std::vector<double> fk = subcarrier_frequencies(cfg.carrier_hz, cfg.bandwidth_hz, cfg.subcarriers);
                std::size_t exact_slot = experiment.methods.size();
                for (std::size_t j = 0; j < experiment.methods.size(); ++j)
                {
                    const Method m = experiment.methods[j];
                    try
                    {
                        if (!has_weights(m))
                        {
                            acc[j].rates.push_back(method_rate(*scene, m, experiment.design));
                            continue;
                        }
                        const Design d = design(*scene, m, experiment.design);
                        acc[j].rates.push_back(achievable_rate(gain_spectrum(*scene, d.weights, fk), scene->budget,
                                                               cfg.carrier_hz, cfg.subcarriers));
                        if (experiment.exact_bs)
                        {
                            Accumulator &ex = acc[exact_slot++];
                            try
                            {
                                const auto [n1, n2] = array_shape(cfg.n_bs);
                                const double sp = experiment.bs_spacing_m > 0.0 ? experiment.bs_spacing_m : 0.5 * cfg.wavelength();
                                const BSArray bs = make_bs_array(scene->placement, n1, n2, sp);
                                ex.rates.push_back(achievable_rate(gain_spectrum(*scene, d.weights, bs, fk),
                                                                   scene->budget, cfg.carrier_hz, cfg.subcarriers));
                            }
                            catch (const std::exception &e)
                            {
                                if (ex.failures++ == 0)
                                    ex.error = e.what();
                            }
                        }
                    }
                    catch (const std::exception &e)
                    {
                        if (acc[j].failures++ == 0)
                            acc[j].error = e.what();
                        if (experiment.exact_bs && has_weights(m))
                        {
                            Accumulator &ex = acc[exact_slot++];
                            if (ex.failures++ == 0)
                                ex.error = e.what();
                        }
                    }
                }
            }

            for (std::size_t j = 0; j < names.size(); ++j)
            {
                CellResult cell;
                cell.value = value;
                cell.method = names[j];
                cell.trials = int(acc[j].rates.size());
                cell.failures = acc[j].failures;
                cell.error = acc[j].error;
                if (cell.trials > 0)
                {
                    const double n = double(cell.trials);
                    const double mean = std::accumulate(acc[j].rates.begin(), acc[j].rates.end(), 0.0) / n;
                    double ss = 0.0;
                    for (double r : acc[j].rates)
                        ss += (r - mean) * (r - mean);
                    cell.mean_rate_bps = mean;
                    cell.stderr_bps = cell.trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
                }
                else
                    cell.mean_rate_bps = cell.stderr_bps = std::numeric_limits<double>::quiet_NaN();
                result.cells.push_back(std::move(cell));
            }
        }
        return result;
    }

    void write_sweep_csv(const SweepResult &result, std::ostream &os)
    {
        os << "sweep_value,method,mean_rate_bps,stderr,trials,failures\n";
        for (const CellResult &c : result.cells)
            os << csv::num(c.value) << ',' << c.method << ',' << csv::num(c.mean_rate_bps) << ','
               << csv::num(c.stderr_bps) << ',' << c.trials << ',' << c.failures << '\n';
    }

    void write_spectrum_csv(std::span<const GainSpectrum> spectra, std::span<const std::string> names,
                            std::ostream &os)
    {
        if (spectra.size() != names.size())
            throw std::invalid_argument("one name per spectrum required");
        if (spectra.empty())
            return;
        const std::size_t n = spectra.front().size();
        for (const GainSpectrum &s : spectra)
            if (s.size() != n)
                throw std::invalid_argument("spectra must share a frequency grid");
        os << "f_hz";
        for (const std::string &name : names)
            os << ',' << name;
        os << '\n';
        for (std::size_t k = 0; k < n; ++k)
        {
            os << csv::num(spectra.front().freqs[k]);
            for (const GainSpectrum &s : spectra)
                os << ',' << csv::num(std::abs(s.gains[k]));
            os << '\n';
        }
    }
}

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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fzbf/evaluation.hpp"
#include "oracles.hpp"

using namespace fzbf;

namespace
{
    SystemConfig sized(double side)
    {
        SystemConfig c;
        c.side_m = side;
        return c;
    }

    Weights random_weights(std::size_t n, std::mt19937_64 &gen)
    {
        std::uniform_real_distribution<double> u(0.0, two_pi);
        Weights w;
        for (std::size_t i = 0; i < n; ++i)
            w.phases.push_back(wrap_phase(u(gen)));
        return w;
    }

    GainSpectrum synthetic(std::vector<double> f, std::vector<double> mag)
    {
        GainSpectrum s;
        s.freqs = std::move(f);
        for (double m : mag)
            s.gains.push_back(m);
        return s;
    }
}

TEST(Methods, NamesRoundTrip)
{
    for (Method m : all_methods())
        EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_EQ(to_string(Method::fz_spm), "fz-spm");
    EXPECT_EQ(to_string(Method::fz_gsa), "fz-gsa");
    EXPECT_THROW(parse_method("fz-magic"), std::invalid_argument);
    EXPECT_FALSE(has_weights(Method::upper_bound));
    EXPECT_TRUE(has_weights(Method::vsa));
}

TEST(Design, EveryWeightedMethodGivesUnitModulusWeights)
{
    const Scene s = Scene::build(sized(0.25), demo_placement());
    DesignOptions o;
    o.vsa_subarrays = 5;
    for (Method m : all_methods())
    {
        if (!has_weights(m))
        {
            EXPECT_THROW(design(s, m, o), std::invalid_argument);
            continue;
        }
        const Design d = design(s, m, o);
        EXPECT_EQ(d.weights.size(), s.grid.size());
        EXPECT_NO_THROW(d.weights.validate());
        for (const cd &z : d.weights.phasors())
            EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
        EXPECT_FALSE(d.components.empty());
        const Design again = design(s, m, o);
        EXPECT_EQ(again.weights.phases, d.weights.phases);
    }
}

TEST(Design, QuantizedWeightsUseTheGrid)
{
    const Scene s = Scene::build(sized(0.25), demo_placement());
    DesignOptions o;
    o.quantize_bits = 2;
    const Design d = design(s, Method::fz_spm, o);
    for (double x : d.weights.phases)
    {
        const double k = x / (pi / 2);
        EXPECT_NEAR(k, std::round(k), 1e-9);
    }
}

TEST(FastPath, MatchesDirectZoneTransform)
{
    const Scene s = Scene::build(sized(0.5), demo_placement());
    const Design d = design(s, Method::fz_spm);
    ASSERT_EQ(d.components.size(), 1u);
    const std::vector<double> f = linear_grid(29e9, 31e9, 41);
    const GainSpectrum g = gain_spectrum(s, d.components, f, false);
    const PhaseProfile &ph = d.components[0].phase;
    for (std::size_t k = 0; k < f.size(); ++k)
    {
        const cd ref = oracle::zone_transform(s.profile, [&](double a) { return ph.excess_phase(a); }, f[k] - 30e9);
        EXPECT_NEAR(std::abs(g.gains[k]), std::abs(ref), 1e-9 * s.profile.total_weight());
    }
}

TEST(FastPath, TracksTheElementOracle)
{
    for (double side : {0.25, 0.5})
    {
        const Scene s = Scene::build(sized(side), demo_placement());
        const std::vector<double> f = linear_grid(29e9, 31e9, 121);
        DesignOptions o;
        o.vsa_subarrays = 5;
        for (Method m : {Method::narrowband, Method::vsa, Method::fz_spm, Method::fz_gsa})
        {
            const Design d = design(s, m, o);
            const GainSpectrum fast = gain_spectrum(s, d.components, f);
            const GainSpectrum ref = gain_spectrum(s, d.weights, f);
            EXPECT_LT(inband_relative_l2(fast, ref, 30e9, 1.5e9), 0.03) << to_string(m) << " D=" << side;
        }
    }
}

TEST(Rate, UpperBoundDominatesRandomWeights)
{
    const Scene s = Scene::build(sized(0.25), demo_placement());
    const std::vector<double> fk = subcarrier_frequencies(30e9, 1.5e9, 128);
    const double ub = rate_upper_bound(s.profile, s.budget);
    std::mt19937_64 gen(17);
    for (int i = 0; i < 100; ++i)
    {
        const Weights w = random_weights(s.grid.size(), gen);
        const double r = achievable_rate(gain_spectrum(s, w, fk), s.budget, 30e9, 128);
        EXPECT_LE(r, ub * (1 + 1e-9));
    }
    for (Method m : {Method::narrowband, Method::vsa, Method::fz_spm, Method::fz_gsa})
    {
        DesignOptions o;
        o.vsa_subarrays = 5;
        EXPECT_LE(method_rate(s, m, o), ub * (1 + 1e-9)) << to_string(m);
    }
}

TEST(Rate, MonotoneInTransmitPower)
{
    Scene s = Scene::build(sized(0.25), demo_placement());
    const std::vector<double> fk = subcarrier_frequencies(30e9, 1.5e9, 128);
    const GainSpectrum g = gain_spectrum(s, design(s, Method::fz_spm).weights, fk);
    double prev = 0.0;
    for (double dbm = -10; dbm <= 40; dbm += 5)
    {
        LinkBudget lb = s.budget;
        lb.tx_power_w = dbm_to_watt(dbm);
        const double r = achievable_rate(g, lb, 30e9, 128);
        EXPECT_GE(r, prev);
        prev = r;
    }
}

TEST(Rate, DirectFormulaAndInterpolation)
{
    LinkBudget lb;
    const std::vector<double> fk = subcarrier_frequencies(30e9, 1.5e9, 4);
    std::vector<double> mag = {1e-6, 2e-6, 3e-6, 4e-6};
    const GainSpectrum g = synthetic(fk, mag);
    double ref = 0.0;
    for (double m : mag)
        ref += 1.5e9 / 4 * std::log2(1 + m * m * lb.tx_power_w / (lb.noise_psd_w_hz * 1.5e9));
    EXPECT_NEAR(achievable_rate(g, lb, 30e9, 4), ref, 1e-9 * ref);
    // A flat spectrum on a different grid gives the same rate as flat samples on the centers.
    const GainSpectrum flat = synthetic(linear_grid(29e9, 31e9, 11), std::vector<double>(11, 2e-6));
    const GainSpectrum flat_k = synthetic(fk, std::vector<double>(4, 2e-6));
    EXPECT_NEAR(achievable_rate(flat, lb, 30e9, 4), achievable_rate(flat_k, lb, 30e9, 4), 1e-6);
    const GainSpectrum narrow = synthetic(linear_grid(29.9e9, 30.1e9, 3), std::vector<double>(3, 1e-6));
    EXPECT_THROW(achievable_rate(narrow, lb, 30e9, 4), std::invalid_argument);
}

TEST(Metrics, RippleLeakageAndDistance)
{
    const std::vector<double> f = linear_grid(28e9, 32e9, 9);
    const GainSpectrum a = synthetic(f, {1, 1, 1, 2, 1, 0.5, 1, 1, 1});
    EXPECT_NEAR(inband_ripple_db(a, 30e9, 1.5e9), 10 * std::log10(16.0), 1e-12);
    EXPECT_NEAR(inband_relative_l2(a, a, 30e9, 1.5e9), 0.0, 1e-15);
    // Out-of-band pairs: [28, 28.5] and [28.5, 29] on each side, trapezoid of |g|^2 = 1.
    EXPECT_NEAR(out_of_band_energy(a, 30e9, 1.5e9), 4 * 0.5e9, 1e-3);
    const GainSpectrum b = synthetic(f, {1, 1, 1, 2, 1, 0.5, 1, 1, 1.5});
    EXPECT_NEAR(inband_relative_l2(b, a, 30e9, 1.5e9), 0.0, 1e-15);
}

TEST(Sweep, SingleTrialMatchesDirectPipeline)
{
    ExperimentSpec e;
    e.values = {10.0};
    e.methods = {Method::fz_spm, Method::upper_bound};
    e.trials = 1;
    e.placement = demo_placement();
    const SystemConfig cfg = sized(0.25);
    const SweepResult r = run_sweep(e, cfg);
    const Scene s = Scene::build(apply_sweep_value(cfg, SweepVariable::tx_power, 10.0), demo_placement());
    EXPECT_DOUBLE_EQ(r.find(10.0, "fz-spm")->mean_rate_bps, method_rate(s, Method::fz_spm));
    EXPECT_DOUBLE_EQ(r.find(10.0, "upper-bound")->mean_rate_bps, method_rate(s, Method::upper_bound));
    EXPECT_EQ(r.find(10.0, "fz-spm")->trials, 1);
    EXPECT_EQ(r.find(10.0, "fz-spm")->failures, 0);
}

TEST(Sweep, SameSeedSameTable)
{
    ExperimentSpec e;
    e.values = {0.0, 20.0};
    e.methods = {Method::narrowband, Method::fz_spm};
    e.trials = 3;
    e.seed = 123;
    const SystemConfig cfg = sized(0.25);
    std::ostringstream a, b, c;
    write_sweep_csv(run_sweep(e, cfg), a);
    write_sweep_csv(run_sweep(e, cfg), b);
    e.seed = 124;
    write_sweep_csv(run_sweep(e, cfg), c);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str(), c.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "sweep_value,method,mean_rate_bps,stderr,trials,failures");
}

TEST(Sweep, RouteLengthPlacementsSplitTheRoute)
{
    ExperimentSpec e;
    e.variable = SweepVariable::route_length;
    for (double L : {20.0, 200.0})
        for (std::uint64_t i = 0; i < 20; ++i)
        {
            const Placement p = trial_placement(e, L, i);
            EXPECT_NEAR(p.bs_distance() + p.ue_distance(), L, 1e-9 * L);
            EXPECT_GE(p.bs_distance(), 0.35 * L - 1e-9);
            EXPECT_LE(p.bs_distance(), 0.65 * L + 1e-9);
        }
}

TEST(Sweep, ApplyValueAndValidation)
{
    const SystemConfig base;
    EXPECT_DOUBLE_EQ(apply_sweep_value(base, SweepVariable::side, 0.5).side_m, 0.5);
    EXPECT_DOUBLE_EQ(apply_sweep_value(base, SweepVariable::bandwidth, 2e9).bandwidth_hz, 2e9);
    EXPECT_EQ(apply_sweep_value(base, SweepVariable::n_bs, 64).n_bs, 64);
    EXPECT_DOUBLE_EQ(apply_sweep_value(base, SweepVariable::tx_power, 7).tx_power_dbm, 7);
    ExperimentSpec e;
    e.trials = 0;
    EXPECT_THROW(e.validate(), std::invalid_argument);
    e = {};
    e.values.clear();
    EXPECT_THROW(e.validate(), std::invalid_argument);
    e = {};
    e.methods.clear();
    EXPECT_THROW(e.validate(), std::invalid_argument);
    EXPECT_EQ(parse_sweep_variable(to_string(SweepVariable::route_length)), SweepVariable::route_length);
}

TEST(Spectrum, GridsAndValidation)
{
    const std::vector<double> fk = subcarrier_frequencies(30e9, 1.5e9, 128);
    EXPECT_NEAR(fk.front(), 30e9 + 1.5e9 * (1.0 / 256 - 0.5), 1e-3);
    EXPECT_NEAR(fk.back(), 30e9 + 1.5e9 * (255.0 / 256 - 0.5), 1e-3);
    EXPECT_THROW(subcarrier_frequencies(30e9, 1.5e9, 0), std::invalid_argument);
    GainSpectrum s = synthetic({1.0, 1.0}, {1.0, 1.0});
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = synthetic({1.0, 2.0}, {1.0, std::nan("")});
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

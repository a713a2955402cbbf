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

#include "fzbf/beamformers.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "fzbf/csv.hpp"

namespace fzbf
{
    void GsaParams::validate(double bandwidth_hz) const
    {
        if (samples < 0 || samples == 1)
            throw std::invalid_argument("GSA sample count must be 0 or at least 2");
        if (freq_samples < 0)
            throw std::invalid_argument("GSA frequency sample count must be nonnegative");
        if (samples > 0 && freq_samples > 0 && freq_samples < samples)
            throw std::invalid_argument("GSA needs at least as many frequency samples as zone samples");
        if (extended_bandwidth_hz != 0.0 && !(extended_bandwidth_hz > bandwidth_hz))
            throw std::invalid_argument("GSA extended bandwidth must exceed the signal bandwidth");
        if (max_iterations < 1)
            throw std::invalid_argument("GSA needs at least one iteration");
        if (!(ridge > 0.0) || tolerance < 0.0)
            throw std::invalid_argument("GSA ridge must be positive and tolerance nonnegative");
    }

    namespace
    {
        // Segment index and local offset of a on a uniform grid, clamped to its range.
        std::pair<std::size_t, double> locate(double a, double a0, double h, std::size_t n)
        {
            if (n < 2 || !(h > 0.0))
                return {0, 0.0};
            const double x = std::clamp((a - a0) / h, 0.0, double(n - 1));
            const std::size_t i = std::min(std::size_t(x), n - 2);
            return {i, (x - double(i)) * h};
        }

        double carrier_phase(double f, double route_m)
        {
            const double cycles = f * route_m / speed_of_light;
            return two_pi * (cycles - std::floor(cycles));
        }
    }

    double PhaseProfile::spm_excess(double a_q) const
    {
        if (pure_carrier() || size() < 2)
            return 0.0;
        const auto [i, s] = locate(a_q, a_min, step, size());
        const double h = step, v0 = v_sq[i], v1 = v_sq[i + 1];
        const double i2a = i2[i] + i1[i] * s + 0.5 * v0 * s * s + (v1 - v0) * s * s * s / (6.0 * h);
        const double aq = a_min + double(i) * h + s;
        return -two_pi * bandwidth_hz * aq / speed_of_light + 2.0 * two_pi * bandwidth_hz * i2a / (speed_of_light * energy_a);
    }

    double PhaseProfile::offset_at(double a_q) const
    {
        if (offsets.empty())
            return 0.0;
        if (offsets.size() == 1)
            return offsets[0];
        const auto [i, s] = locate(a_q, offset_a_min, offset_step, offsets.size());
        const double w = s / offset_step;
        return (1.0 - w) * offsets[i] + w * offsets[i + 1];
    }

    double PhaseProfile::excess_phase(double a_q) const
    {
        return spm_excess(a_q) + offset_at(a_q);
    }

    double PhaseProfile::phase(double a_q) const
    {
        return excess_phase(a_q) + 2.0 * two_pi * carrier_hz * a_q / speed_of_light;
    }

    double PhaseProfile::instantaneous_frequency(double a_q) const
    {
        if (pure_carrier() || size() < 2)
            return carrier_hz;
        const auto [i, s] = locate(a_q, a_min, step, size());
        const double v0 = v_sq[i], v1 = v_sq[i + 1];
        const double i1a = i1[i] + v0 * s + 0.5 * (v1 - v0) * s * s / step;
        return carrier_hz - 0.5 * bandwidth_hz + bandwidth_hz * i1a / energy_a;
    }

    Weights narrowband_phases(const ElementGrid &grid, const Placement &p, double carrier_hz)
    {
        const RouteTable routes = route_table(grid, p);
        Weights w;
        w.phases.resize(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n)
            w.phases[n] = wrap_phase(carrier_phase(carrier_hz, routes.route_m[n]));
        return w;
    }

    Weights vsa_phases(const ElementGrid &grid, const Placement &p, double carrier_hz, double bandwidth_hz,
                       int subarrays)
    {
        if (subarrays < 1 || grid.rows() % subarrays != 0)
            throw std::invalid_argument("subarray count must divide the number of element rows");
        const RouteTable routes = route_table(grid, p);
        const int band_rows = grid.rows() / subarrays;
        Weights w;
        w.phases.resize(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const int band = grid.indices(n).first / band_rows;
            const double f = carrier_hz - 0.5 * bandwidth_hz + (band + 0.5) * bandwidth_hz / subarrays;
            w.phases[n] = wrap_phase(carrier_phase(f, routes.route_m[n]));
        }
        return w;
    }

    PhaseProfile spm_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz)
    {
        if (profile.size() < 1)
            throw std::invalid_argument("empty intensity profile");
        PhaseProfile out;
        out.kind = PhaseProfile::Kind::spm;
        out.carrier_hz = carrier_hz;
        out.a_min = profile.a_min;
        out.step = profile.step;
        const std::size_t n = profile.size();
        out.v_sq.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.v_sq[i] = profile.v[i] * profile.v[i];
        out.i1.assign(n, 0.0);
        out.i2.assign(n, 0.0);
        const double h = profile.step;
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
            const double v0 = out.v_sq[i], v1 = out.v_sq[i + 1];
            out.i1[i + 1] = out.i1[i] + 0.5 * h * (v0 + v1);
            out.i2[i + 1] = out.i2[i] + out.i1[i] * h + h * h * (2.0 * v0 + v1) / 6.0;
        }
        out.energy_a = out.i1.back();
        if (n >= 2 && h > 0.0 && !(out.energy_a > 0.0))
            throw std::invalid_argument("intensity profile carries no energy");
        out.bandwidth_hz = (n < 2 || !(h > 0.0)) ? 0.0 : bandwidth_hz;
        return out;
    }

    GsResult gerchberg_saxton(const Eigen::MatrixXcd &A, const std::vector<double> &target, Eigen::VectorXcd w0,
                              int max_iterations, double ridge, double tolerance)
    {
        using Mat = Eigen::MatrixXcd;
        using Vec = Eigen::VectorXcd;
        const Eigen::Index ns = A.cols();
        if (std::size_t(A.rows()) != target.size() || w0.size() != ns)
            throw std::invalid_argument("GS dimensions do not match");

        auto project = [&](const Vec &g) {
            Vec gp(g.size());
            for (Eigen::Index k = 0; k < g.size(); ++k)
            {
                const double m = std::abs(g[k]);
                const double t = target[std::size_t(k)];
                gp[k] = m > 0.0 ? g[k] * (t / m) : std::complex<double>(t, 0.0);
            }
            return gp;
        };
        auto residual = [&](const Vec &g) { return (project(g) - g).norm(); };

        GsResult out;
        const Mat AhA = A.adjoint() * A;
        double eps = ridge;
        Eigen::LLT<Mat> llt;
        for (int attempt = 0;; ++attempt)
        {
            llt.compute(AhA + eps * Mat::Identity(ns, ns));
            if (llt.info() == Eigen::Success)
                break;
            if (attempt >= 12)
                throw std::runtime_error("GS normal matrix stays singular after ridge escalation");
            eps = eps > 0.0 ? 10.0 * eps : 1e-12 * std::max(AhA.diagonal().real().maxCoeff(), 1e-300);
            out.report.warnings.push_back("normal matrix not positive definite; ridge raised to " + csv::num(eps));
        }
        out.report.ridge = eps;

        for (Eigen::Index n = 0; n < ns; ++n)
            w0[n] = std::abs(w0[n]) > 0.0 ? w0[n] / std::abs(w0[n]) : std::complex<double>(1.0, 0.0);
        Vec w = w0;
        Vec g = A * w;
        double res = residual(g);
        out.report.initial_residual = res;
        out.w = w;
        double best = res;
        for (int it = 1; it <= max_iterations; ++it)
        {
            Vec next = llt.solve(A.adjoint() * project(g));
            for (Eigen::Index n = 0; n < ns; ++n)
            {
                const double m = std::abs(next[n]);
                next[n] = m > 0.0 ? next[n] / m : w[n];
            }
            w = next;
            g = A * w;
            const double prev = res;
            res = residual(g);
            out.report.iterations = it;
            if (res < best)
            {
                best = res;
                out.w = w;
            }
            if (std::abs(prev - res) <= tolerance * prev)
                break;
        }
        out.report.final_residual = best;
        return out;
    }

    PhaseProfile gsa_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz,
                             const GsaParams &params)
    {
        return gsa_profile(profile, carrier_hz, bandwidth_hz, params, spm_profile(profile, carrier_hz, bandwidth_hz));
    }

    PhaseProfile gsa_profile(const IntensityProfile &profile, double carrier_hz, double bandwidth_hz,
                             const GsaParams &params, const PhaseProfile &init)
    {
        params.validate(bandwidth_hz);
        if (init.carrier_hz != carrier_hz)
            throw std::invalid_argument("GSA initial profile has a different carrier");
        using Mat = Eigen::MatrixXcd;
        using Vec = Eigen::VectorXcd;

        PhaseProfile out = init;
        out.kind = PhaseProfile::Kind::gsa;
        if (init.pure_carrier() || profile.size() < 2)
            return out;

        // Zone samples.
        const std::size_t ns = params.samples > 0 ? std::size_t(params.samples) : profile.size();
        const double a0 = profile.a_min;
        const double hs = (profile.a_max() - a0) / double(ns - 1);
        std::vector<double> as(ns), vs(ns), hw(ns);
        for (std::size_t n = 0; n < ns; ++n)
        {
            as[n] = a0 + double(n) * hs;
            vs[n] = params.samples > 0 ? profile.v_at(as[n]) : profile.v[n];
            hw[n] = (n == 0 || n + 1 == ns) ? 0.5 * hs : hs;
        }

        // Frequency samples over the extended band, midpoint rule.
        const std::size_t kf = params.freq_samples > 0 ? std::size_t(params.freq_samples) : 4 * ns;
        const double bx = params.extended_bandwidth_hz > 0.0 ? params.extended_bandwidth_hz : 2.0 * bandwidth_hz;
        const double level = std::sqrt(profile.energy() / bandwidth_hz);
        std::vector<double> target(kf);
        Mat A(static_cast<Eigen::Index>(kf), static_cast<Eigen::Index>(ns));
        for (std::size_t k = 0; k < kf; ++k)
        {
            const double df = -0.5 * bx + (double(k) + 0.5) * bx / double(kf);
            target[k] = std::abs(df) <= 0.5 * bandwidth_hz ? level : 0.0;
            for (std::size_t n = 0; n < ns; ++n)
            {
                const double ph = init.excess_phase(as[n]) - 2.0 * two_pi * df * (as[n] - a0) / speed_of_light;
                A(Eigen::Index(k), Eigen::Index(n)) = vs[n] * hw[n] * std::polar(1.0, ph);
            }
        }

        GsResult gs = gerchberg_saxton(A, target, Vec::Ones(Eigen::Index(ns)), params.max_iterations,
                                       params.ridge * A.squaredNorm() / double(ns), params.tolerance);
        const Vec &best = gs.w;

        // Unwrapped offsets on the zone samples, on top of whatever the init carried.
        out.offset_a_min = a0;
        out.offset_step = hs;
        out.offsets.resize(ns);
        double prev_arg = 0.0, unwrapped = 0.0;
        for (std::size_t n = 0; n < ns; ++n)
        {
            const double arg = std::arg(best[Eigen::Index(n)]);
            if (n == 0)
                unwrapped = arg;
            else
                unwrapped += std::remainder(arg - prev_arg, two_pi);
            prev_arg = arg;
            out.offsets[n] = init.offset_at(as[n]) + unwrapped;
        }
        out.report = std::move(gs.report);
        return out;
    }

    Weights profile_to_weights(const PhaseProfile &profile, const ElementGrid &grid, const Placement &p)
    {
        const RouteTable routes = route_table(grid, p);
        Weights w;
        w.phases.resize(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const double route = routes.route_m[n];
            w.phases[n] = wrap_phase(profile.excess_phase(0.5 * route) + carrier_phase(profile.carrier_hz, route));
        }
        return w;
    }

    Weights quantize_weights(const Weights &w, int bits)
    {
        if (bits < 1 || bits > 30)
            throw std::invalid_argument("quantization bits must be in [1, 30]");
        const long long levels = 1LL << bits;
        const double q = two_pi / double(levels);
        Weights out;
        out.phases.resize(w.size());
        for (std::size_t n = 0; n < w.size(); ++n)
        {
            long long k = std::llround(w.phases[n] / q) % levels;
            if (k < 0)
                k += levels;
            out.phases[n] = double(k) * q;
        }
        return out;
    }

    void write_weights_csv(const Weights &w, const ElementGrid &grid, int bits, std::ostream &os)
    {
        if (w.size() != grid.size())
            throw std::invalid_argument("weight count does not match the element grid");
        const Weights q = bits > 0 ? quantize_weights(w, bits) : w;
        os << "n,n1,n2,phi_rad,phi_quantized\n";
        for (std::size_t n = 0; n < w.size(); ++n)
        {
            const auto [i1, i2] = grid.indices(n);
            os << n + 1 << ',' << i1 + 1 << ',' << i2 + 1 << ',' << csv::num(w.phases[n]) << ','
               << csv::num(q.phases[n]) << '\n';
        }
    }
}

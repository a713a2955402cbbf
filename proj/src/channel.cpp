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

#include "fzbf/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fzbf/kernels.hpp"

namespace fzbf
{
    double dbm_to_watt(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    void LinkBudget::validate() const
    {
        if (!(tx_power_w > 0.0) || !(noise_psd_w_hz > 0.0) || !(bandwidth_hz > 0.0))
            throw std::invalid_argument("link budget values must be strictly positive");
    }

    LinkBudget LinkBudget::from_config(const SystemConfig &config)
    {
        LinkBudget lb{dbm_to_watt(config.tx_power_dbm), dbm_to_watt(config.noise_psd_dbm_hz), config.bandwidth_hz};
        lb.validate();
        return lb;
    }

    double wrap_phase(double phi)
    {
        double r = std::fmod(phi, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }

    void Weights::validate() const
    {
        for (double p : phases)
            if (!std::isfinite(p) || p < 0.0 || p >= two_pi)
                throw std::invalid_argument("weight phase outside [0, 2 pi)");
    }

    std::vector<cd> Weights::phasors() const
    {
        std::vector<cd> out(phases.size());
        for (std::size_t n = 0; n < phases.size(); ++n)
            out[n] = std::polar(1.0, phases[n]);
        return out;
    }

    double path_gain_constant(const SystemConfig &config, const Placement &p, double f)
    {
        if (!(f > 0.0))
            throw std::invalid_argument("frequency must be positive");
        const SystemConfig r = config.resolved();
        const double lambda_over_2pi = speed_of_light / (two_pi * f);
        const double d = r.spacing_m;
        return std::sqrt(double(r.n_bs)) * lambda_over_2pi * lambda_over_2pi /
               (p.bs_distance() * p.ue_distance() * d * d);
    }

    std::vector<cd> discrete_spectrum_unconstrained(const ElementGrid &grid, const Placement &p,
                                                    std::span<const cd> weights, std::span<const double> freqs,
                                                    int n_bs, Exec exec)
    {
        if (weights.size() != grid.size())
            throw std::invalid_argument("weight count does not match the element grid");
        const RouteTable routes = route_table(grid, p);
        kernels::CascadeInput in{routes.route_m, routes.length_product_m2, weights, std::sqrt(double(n_bs))};
        std::vector<cd> out(freqs.size());
        if (exec == Exec::serial)
            kernels::cascade_spectrum_serial(in, freqs, out);
        else
            kernels::cascade_spectrum_omp(in, freqs, out);
        return out;
    }

    std::vector<cd> discrete_spectrum(const ElementGrid &grid, const Placement &p, const Weights &w,
                                      std::span<const double> freqs, int n_bs, Exec exec)
    {
        if (w.size() != grid.size())
            throw std::invalid_argument("weight count does not match the element grid");
        const std::vector<cd> phasors = w.phasors();
        return discrete_spectrum_unconstrained(grid, p, phasors, freqs, n_bs, exec);
    }

    cd equivalent_gain_discrete(const ElementGrid &grid, const Placement &p, const Weights &w, double f, int n_bs)
    {
        const double freqs[1] = {f};
        return discrete_spectrum(grid, p, w, freqs, n_bs, Exec::serial)[0];
    }

    std::vector<cd> exact_bs_spectrum(const ElementGrid &grid, const Placement &p, const BSArray &bs,
                                      const Weights &w, std::span<const double> freqs, Exec exec)
    {
        if (w.size() != grid.size())
            throw std::invalid_argument("weight count does not match the element grid");
        std::vector<Vec3> antennas(static_cast<std::size_t>(bs.size()));
        std::vector<double> precoder(antennas.size());
        for (int m = 0; m < bs.size(); ++m)
        {
            const Vec3 o = bs.offset(m);
            antennas[std::size_t(m)] = p.bs + o;
            precoder[std::size_t(m)] = o.dot(bs.departure);
        }
        const std::vector<cd> phasors = w.phasors();
        kernels::ExactBsInput in{grid.xs(), grid.ys(), p.ue, antennas, precoder, phasors};
        std::vector<cd> out(freqs.size());
        if (exec == Exec::serial)
            kernels::exact_bs_spectrum_serial(in, freqs, out);
        else
            kernels::exact_bs_spectrum_omp(in, freqs, out);
        return out;
    }

    cd equivalent_gain_exact_bs(const ElementGrid &grid, const Placement &p, const BSArray &bs, const Weights &w,
                                double f)
    {
        const double freqs[1] = {f};
        return exact_bs_spectrum(grid, p, bs, w, freqs, Exec::serial)[0];
    }
}

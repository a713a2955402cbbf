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

#include <complex>
#include <span>
#include <vector>

#include "fzbf/scenario.hpp"

namespace fzbf
{
    using cd = std::complex<double>;

    double dbm_to_watt(double dbm);

    struct LinkBudget
    {
        double tx_power_w = 0.01;
        double noise_psd_w_hz = 1e-20;
        double bandwidth_hz = 1.5e9;

        // Flat transmit PSD S_x = P_t / B.
        double signal_psd() const { return tx_power_w / bandwidth_hz; }
        void validate() const;

        static LinkBudget from_config(const SystemConfig &config);
    };

    // Wraps into [0, 2 pi).
    double wrap_phase(double phi);

    // RIS phase shifts, one per element, each in [0, 2 pi).
    struct Weights
    {
        std::vector<double> phases;

        std::size_t size() const { return phases.size(); }
        // Throws when a phase is outside [0, 2 pi) or not finite.
        void validate() const;
        std::vector<cd> phasors() const;
    };

    // g0 = sqrt(N_BS) c^2 / (4 pi^2 f^2 R_br R_ru d^2), with R measured to the RIS center.
    double path_gain_constant(const SystemConfig &config, const Placement &p, double f);

    enum class Exec
    {
        serial,
        parallel
    };

    // Ground-truth equivalent channel: sqrt(N_BS) sum_n e^{j phi_n} A_n(f) e^{-j 2 pi f l_n / c}
    // with exact per-element distances, A_n(f) = c^2 / (4 pi^2 f^2 l_br l_ru).
    cd equivalent_gain_discrete(const ElementGrid &grid, const Placement &p, const Weights &w, double f, int n_bs = 1);

    std::vector<cd> discrete_spectrum(const ElementGrid &grid, const Placement &p, const Weights &w,
                                      std::span<const double> freqs, int n_bs = 1, Exec exec = Exec::parallel);

    // Same sum with arbitrary complex weights (no modulus constraint).
    std::vector<cd> discrete_spectrum_unconstrained(const ElementGrid &grid, const Placement &p,
                                                    std::span<const cd> weights, std::span<const double> freqs,
                                                    int n_bs = 1, Exec exec = Exec::parallel);

    // Multi-antenna BS with exact per-antenna distances and precoder matched to the
    // far-field response toward the RIS center. Reduces to the discrete model (including
    // its sqrt(N_BS) factor) when the antennas are co-located.
    cd equivalent_gain_exact_bs(const ElementGrid &grid, const Placement &p, const BSArray &bs, const Weights &w,
                                double f);

    std::vector<cd> exact_bs_spectrum(const ElementGrid &grid, const Placement &p, const BSArray &bs,
                                      const Weights &w, std::span<const double> freqs, Exec exec = Exec::parallel);
}

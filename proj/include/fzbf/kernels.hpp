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

// Element-sum kernels behind the discrete channel oracle.
//
// Every kernel comes in two flavours:
//   *_serial  straightforward double loop with one complex exponential per term.
//             Kept as the reference the parallel kernels are tested against.
//   *_omp     OpenMP over fixed-size element chunks. On a uniform frequency grid the
//             per-element exponentials are advanced by a complex rotation instead of
//             being re-evaluated. Chunk partial sums are reduced in chunk order, so the
//             result is bit-identical for any thread count.

#pragma once

#include <complex>
#include <span>

#include "fzbf/scenario.hpp"

namespace fzbf::kernels
{
    using cd = std::complex<double>;

    inline constexpr std::size_t chunk_size = 256;

    // out[k] = scale(f_k) * sum_n weight_n / prod_n * exp(-j 2 pi f_k route_n / c),
    // scale(f) = amplitude_scale * (c / (2 pi f))^2.
    struct CascadeInput
    {
        std::span<const double> route_m;
        std::span<const double> length_product_m2;
        std::span<const cd> weights;
        double amplitude_scale = 1.0;
    };

    void cascade_spectrum_serial(const CascadeInput &in, std::span<const double> freqs, std::span<cd> out);
    void cascade_spectrum_omp(const CascadeInput &in, std::span<const double> freqs, std::span<cd> out);

    // Exact multi-antenna BS sum:
    // out[k] = (c / (2 pi f_k))^2 / sqrt(M) * sum_n sum_m weight_n
    //          * exp(-j 2 pi f_k (l_nm + precoder_m + l_n^RU) / c) / (l_nm * l_n^RU)
    // where l_nm is the exact distance from element n to antenna m and precoder_m is the
    // extra path the far-field precoder compensates (offset_m . departure).
    struct ExactBsInput
    {
        std::span<const double> ris_x;
        std::span<const double> ris_y;
        Vec3 ue = Vec3::Zero();
        std::span<const Vec3> antennas;
        std::span<const double> precoder_delay_m;
        std::span<const cd> weights;
    };

    void exact_bs_spectrum_serial(const ExactBsInput &in, std::span<const double> freqs, std::span<cd> out);
    void exact_bs_spectrum_omp(const ExactBsInput &in, std::span<const double> freqs, std::span<cd> out);

    // True when freqs[k] = freqs[0] + k * step to 1e-9 of the step.
    bool is_uniform_grid(std::span<const double> freqs);

    // exp(-j 2 pi f * length / c) with the cycle count reduced before scaling.
    cd delay_phasor(double f, double length_m);
}

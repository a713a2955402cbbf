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

#include "fzbf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fzbf::kernels
{
    namespace
    {
        // Rotations are re-seeded from a direct evaluation every this many steps.
        constexpr std::size_t resync_every = 256;

        double wave_scale(double f)
        {
            const double s = speed_of_light / (two_pi * f);
            return s * s;
        }

        void check_cascade(const CascadeInput &in, std::span<const double> freqs, std::span<cd> out)
        {
            if (in.route_m.size() != in.length_product_m2.size() || in.route_m.size() != in.weights.size())
                throw std::invalid_argument("cascade kernel: route, amplitude and weight sizes differ");
            if (out.size() != freqs.size())
                throw std::invalid_argument("cascade kernel: output size differs from frequency count");
        }

        void check_exact(const ExactBsInput &in, std::span<const double> freqs, std::span<cd> out)
        {
            if (in.ris_x.size() != in.ris_y.size() || in.ris_x.size() != in.weights.size())
                throw std::invalid_argument("exact BS kernel: element and weight sizes differ");
            if (in.antennas.size() != in.precoder_delay_m.size() || in.antennas.empty())
                throw std::invalid_argument("exact BS kernel: antenna and precoder sizes differ");
            if (out.size() != freqs.size())
                throw std::invalid_argument("exact BS kernel: output size differs from frequency count");
        }

        // Adds coefficient * exp(-j 2 pi f_k length / c) to acc[k] for all k.
        void accumulate_term(cd coefficient, double length, std::span<const double> freqs, bool uniform,
                             double step, cd *acc)
        {
            const std::size_t nf = freqs.size();
            if (!uniform)
            {
                for (std::size_t k = 0; k < nf; ++k)
                    acc[k] += coefficient * delay_phasor(freqs[k], length);
                return;
            }
            const cd rot = delay_phasor(step, length);
            for (std::size_t k0 = 0; k0 < nf; k0 += resync_every)
            {
                cd z = coefficient * delay_phasor(freqs[k0], length);
                const std::size_t k1 = std::min(nf, k0 + resync_every);
                for (std::size_t k = k0; k < k1; ++k)
                {
                    acc[k] += z;
                    z *= rot;
                }
            }
        }

        template <typename ChunkFn>
        void chunked_reduce(std::size_t count, std::size_t nf, ChunkFn &&fn, std::span<cd> out)
        {
            const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
            std::vector<cd> partial(n_chunks * nf, cd(0.0, 0.0));
            const long long nc = (long long)n_chunks;
#pragma omp parallel for schedule(dynamic, 1)
            for (long long c = 0; c < nc; ++c)
            {
                const std::size_t lo = std::size_t(c) * chunk_size;
                const std::size_t hi = std::min(count, lo + chunk_size);
                fn(lo, hi, partial.data() + std::size_t(c) * nf);
            }
            std::fill(out.begin(), out.end(), cd(0.0, 0.0));
            for (std::size_t c = 0; c < n_chunks; ++c)
                for (std::size_t k = 0; k < nf; ++k)
                    out[k] += partial[c * nf + k];
        }
    }

    cd delay_phasor(double f, double length_m)
    {
        double cycles = f * length_m / speed_of_light;
        cycles -= std::floor(cycles);
        return std::polar(1.0, -two_pi * cycles);
    }

    bool is_uniform_grid(std::span<const double> freqs)
    {
        if (freqs.size() < 3)
            return freqs.size() == 2;
        const double step = (freqs.back() - freqs.front()) / double(freqs.size() - 1);
        if (!(step > 0.0))
            return false;
        for (std::size_t k = 0; k < freqs.size(); ++k)
            if (std::abs(freqs[k] - (freqs.front() + double(k) * step)) > 1e-9 * step)
                return false;
        return true;
    }

    void cascade_spectrum_serial(const CascadeInput &in, std::span<const double> freqs, std::span<cd> out)
    {
        check_cascade(in, freqs, out);
        for (std::size_t k = 0; k < freqs.size(); ++k)
        {
            const double f = freqs[k];
            cd acc(0.0, 0.0);
            for (std::size_t n = 0; n < in.route_m.size(); ++n)
            {
                const double arg = -two_pi * f * in.route_m[n] / speed_of_light;
                acc += in.weights[n] * std::polar(1.0 / in.length_product_m2[n], arg);
            }
            out[k] = in.amplitude_scale * wave_scale(f) * acc;
        }
    }

    void cascade_spectrum_omp(const CascadeInput &in, std::span<const double> freqs, std::span<cd> out)
    {
        check_cascade(in, freqs, out);
        const std::size_t nf = freqs.size();
        if (nf == 0)
            return;
        const bool uniform = is_uniform_grid(freqs);
        const double step = nf > 1 ? (freqs.back() - freqs.front()) / double(nf - 1) : 0.0;

        chunked_reduce(
            in.route_m.size(), nf,
            [&](std::size_t lo, std::size_t hi, cd *acc)
            {
                for (std::size_t n = lo; n < hi; ++n)
                    accumulate_term(in.weights[n] / in.length_product_m2[n], in.route_m[n], freqs, uniform, step, acc);
            },
            out);
        for (std::size_t k = 0; k < nf; ++k)
            out[k] *= in.amplitude_scale * wave_scale(freqs[k]);
    }

    void exact_bs_spectrum_serial(const ExactBsInput &in, std::span<const double> freqs, std::span<cd> out)
    {
        check_exact(in, freqs, out);
        const double inv_sqrt_m = 1.0 / std::sqrt(double(in.antennas.size()));
        for (std::size_t k = 0; k < freqs.size(); ++k)
        {
            const double f = freqs[k];
            cd acc(0.0, 0.0);
            for (std::size_t n = 0; n < in.ris_x.size(); ++n)
            {
                const Vec3 r(in.ris_x[n], in.ris_y[n], 0.0);
                const double l_ru = (r - in.ue).norm();
                for (std::size_t m = 0; m < in.antennas.size(); ++m)
                {
                    const double l_br = (r - in.antennas[m]).norm();
                    const double path = l_br + in.precoder_delay_m[m] + l_ru;
                    acc += in.weights[n] * std::polar(1.0 / (l_br * l_ru), -two_pi * f * path / speed_of_light);
                }
            }
            out[k] = inv_sqrt_m * wave_scale(f) * acc;
        }
    }

    void exact_bs_spectrum_omp(const ExactBsInput &in, std::span<const double> freqs, std::span<cd> out)
    {
        check_exact(in, freqs, out);
        const std::size_t nf = freqs.size();
        if (nf == 0)
            return;
        const bool uniform = is_uniform_grid(freqs);
        const double step = nf > 1 ? (freqs.back() - freqs.front()) / double(nf - 1) : 0.0;
        const double inv_sqrt_m = 1.0 / std::sqrt(double(in.antennas.size()));

        chunked_reduce(
            in.ris_x.size(), nf,
            [&](std::size_t lo, std::size_t hi, cd *acc)
            {
                for (std::size_t n = lo; n < hi; ++n)
                {
                    const Vec3 r(in.ris_x[n], in.ris_y[n], 0.0);
                    const double l_ru = (r - in.ue).norm();
                    for (std::size_t m = 0; m < in.antennas.size(); ++m)
                    {
                        const double l_br = (r - in.antennas[m]).norm();
                        accumulate_term(in.weights[n] / (l_br * l_ru), l_br + in.precoder_delay_m[m] + l_ru, freqs,
                                        uniform, step, acc);
                    }
                }
            },
            out);
        for (std::size_t k = 0; k < nf; ++k)
            out[k] *= inv_sqrt_m * wave_scale(freqs[k]);
    }
}

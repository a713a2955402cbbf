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

// Serial reference vs OpenMP kernels on the default 200 x 200 surface.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fzbf/channel.hpp"
#include "fzbf/evaluation.hpp"
#include "fzbf/kernels.hpp"

namespace
{
    using namespace fzbf;

    struct Fixture
    {
        Scene scene;
        RouteTable routes;
        std::vector<cd> phasors;
        std::vector<double> freqs;

        explicit Fixture(int points)
            : scene(Scene::build(SystemConfig{}, demo_placement())),
              routes(route_table(scene.grid, scene.placement)),
              phasors(design(scene, Method::fz_spm).weights.phasors()),
              freqs(subcarrier_frequencies(scene.config.carrier_hz, scene.config.bandwidth_hz, points))
        {
        }

        kernels::CascadeInput cascade() const
        {
            return {routes.route_m, routes.length_product_m2, phasors, std::sqrt(double(scene.config.n_bs))};
        }
    };

    const Fixture &fixture(int points)
    {
        static Fixture f32(32), f128(128);
        return points == 32 ? f32 : f128;
    }

    void cascade(benchmark::State &state, bool parallel)
    {
        const Fixture &f = fixture(int(state.range(0)));
        std::vector<cd> out(f.freqs.size());
        const auto in = f.cascade();
        for (auto _ : state)
        {
            if (parallel)
                kernels::cascade_spectrum_omp(in, f.freqs, out);
            else
                kernels::cascade_spectrum_serial(in, f.freqs, out);
            benchmark::DoNotOptimize(out.data());
        }
        state.SetItemsProcessed(state.iterations() * std::int64_t(f.routes.route_m.size() * f.freqs.size()));
    }

    void exact_bs(benchmark::State &state, bool parallel)
    {
        const Fixture &f = fixture(32);
        const int side = int(state.range(0));
        const BSArray bs = make_bs_array(f.scene.placement, side, side, 0.5 * f.scene.config.wavelength());
        std::vector<Vec3> antennas;
        std::vector<double> precoder;
        for (int m = 0; m < bs.size(); ++m)
        {
            antennas.push_back(f.scene.placement.bs + bs.offset(m));
            precoder.push_back(bs.offset(m).dot(bs.departure));
        }
        const kernels::ExactBsInput in{f.scene.grid.xs(), f.scene.grid.ys(), f.scene.placement.ue, antennas, precoder,
                                       f.phasors};
        std::vector<cd> out(f.freqs.size());
        for (auto _ : state)
        {
            if (parallel)
                kernels::exact_bs_spectrum_omp(in, f.freqs, out);
            else
                kernels::exact_bs_spectrum_serial(in, f.freqs, out);
            benchmark::DoNotOptimize(out.data());
        }
        state.SetItemsProcessed(state.iterations() *
                                std::int64_t(f.routes.route_m.size() * antennas.size() * f.freqs.size()));
    }
}

BENCHMARK_CAPTURE(cascade, serial, false)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cascade, omp, true)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact_bs, serial, false)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact_bs, omp, true)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

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
#include <string_view>
#include <vector>

namespace fzbf
{
    enum class SpectrumMethod
    {
        fresnel_fast,
        discrete_oracle,
        exact_bs,
        ideal
    };

    std::string_view to_string(SpectrumMethod m);

    // Complex equivalent channel sampled on a strictly increasing frequency grid.
    struct GainSpectrum
    {
        std::vector<double> freqs;
        std::vector<std::complex<double>> gains;
        SpectrumMethod method = SpectrumMethod::discrete_oracle;

        std::size_t size() const { return freqs.size(); }
        std::vector<double> power() const;
        void validate() const;
    };

    // f_k = fc + B ((2k - 1) / (2K) - 1 / 2), k = 1..K.
    std::vector<double> subcarrier_frequencies(double carrier_hz, double bandwidth_hz, int count);

    // count points from lo to hi inclusive.
    std::vector<double> linear_grid(double lo, double hi, int count);
}

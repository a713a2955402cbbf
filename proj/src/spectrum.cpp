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

#include "fzbf/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace fzbf
{
    std::string_view to_string(SpectrumMethod m)
    {
        switch (m)
        {
        case SpectrumMethod::fresnel_fast:
            return "fresnel-fast";
        case SpectrumMethod::discrete_oracle:
            return "discrete-oracle";
        case SpectrumMethod::exact_bs:
            return "exact-bs";
        case SpectrumMethod::ideal:
            return "ideal";
        }
        return "unknown";
    }

    std::vector<double> GainSpectrum::power() const
    {
        std::vector<double> p(gains.size());
        for (std::size_t k = 0; k < gains.size(); ++k)
            p[k] = std::norm(gains[k]);
        return p;
    }

    void GainSpectrum::validate() const
    {
        if (freqs.size() != gains.size())
            throw std::invalid_argument("spectrum frequency and gain counts differ");
        for (std::size_t k = 1; k < freqs.size(); ++k)
            if (!(freqs[k] > freqs[k - 1]))
                throw std::invalid_argument("spectrum frequencies must be strictly increasing");
        for (const auto &g : gains)
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
                throw std::invalid_argument("spectrum contains a non-finite gain");
    }

    std::vector<double> subcarrier_frequencies(double carrier_hz, double bandwidth_hz, int count)
    {
        if (count < 1)
            throw std::invalid_argument("subcarrier count must be at least 1");
        std::vector<double> f(static_cast<std::size_t>(count));
        for (int k = 1; k <= count; ++k)
            f[std::size_t(k - 1)] = carrier_hz + bandwidth_hz * ((2.0 * k - 1.0) / (2.0 * count) - 0.5);
        return f;
    }

    std::vector<double> linear_grid(double lo, double hi, int count)
    {
        if (count < 1)
            return {};
        if (count == 1)
            return {lo};
        std::vector<double> f(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k)
            f[std::size_t(k)] = lo + (hi - lo) * double(k) / double(count - 1);
        return f;
    }
}

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

// Brute-force references for the unit and acceptance tests. Nothing here calls the
// quantity it checks; each one recomputes it from element positions or dense sampling.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fzbf/beamformers.hpp"
#include "fzbf/fresnel.hpp"
#include "fzbf/scenario.hpp"

namespace fzbf::oracle
{
    inline constexpr double c = 299792458.0;

    inline double route(double x, double y, const Placement &p)
    {
        const double d1 = std::sqrt((x - p.bs.x()) * (x - p.bs.x()) + (y - p.bs.y()) * (y - p.bs.y()) +
                                    p.bs.z() * p.bs.z());
        const double d2 = std::sqrt((x - p.ue.x()) * (x - p.ue.x()) + (y - p.ue.y()) * (y - p.ue.y()) +
                                    p.ue.z() * p.ue.z());
        return d1 + d2;
    }

    // Element centers recomputed from the one-based grid formula.
    inline std::vector<std::pair<double, double>> element_centers(int n1, int n2, double d)
    {
        std::vector<std::pair<double, double>> out;
        for (int i = 1; i <= n1; ++i)
            for (int j = 1; j <= n2; ++j)
                out.push_back({(i - (n1 + 1) / 2.0) * d, (j - (n2 + 1) / 2.0) * d});
        return out;
    }

    inline DelayExtent delay_extent(int n1, int n2, double d, const Placement &p)
    {
        DelayExtent e{1e300, -1e300};
        for (const auto &[x, y] : element_centers(n1, n2, d))
        {
            const double t = route(x, y, p) / c;
            e.t_min = std::min(e.t_min, t);
            e.t_max = std::max(e.t_max, t);
        }
        return e;
    }

    // sqrt(N_BS) c^2 / (4 pi^2 f^2 R_br R_ru d^2).
    inline double g0(double f, double d, double r_br, double r_ru, int n_bs = 1)
    {
        const double pi = std::acos(-1.0);
        return std::sqrt(double(n_bs)) * c * c / (4.0 * pi * pi * f * f * r_br * r_ru * d * d);
    }

    // Midpoint rule of g0 * (R_br R_ru) / (l_br l_ru) over the square [-D/2, D/2]^2.
    inline double exact_aperture_weight(double side, double g0_value, const Placement &p, int cells)
    {
        const double h = side / cells;
        const double r_br = p.bs.norm(), r_ru = p.ue.norm();
        double s = 0.0;
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j)
            {
                const double x = -0.5 * side + (i + 0.5) * h, y = -0.5 * side + (j + 0.5) * h;
                const Vec3 r(x, y, 0.0);
                s += r_br * r_ru / ((r - p.bs).norm() * (r - p.ue).norm());
            }
        return g0_value * s * h * h;
    }

    // Element histogram on the profile grid: count * g0 d^2 / width in bins centered on a_i.
    // Each element cell is split into sub x sub points; sub = 1 counts the elements themselves.
    // The end bins only extend half a step into the profile range.
    inline std::vector<double> histogram_profile(int n1, int n2, double d, const Placement &p,
                                                 const IntensityProfile &prof, int sub = 1)
    {
        std::vector<double> v(prof.size(), 0.0);
        const double w = prof.g0 * d * d / (double(sub) * sub);
        for (const auto &[x, y] : element_centers(n1, n2, d))
            for (int i = 0; i < sub; ++i)
                for (int j = 0; j < sub; ++j)
                {
                    const double xs = x + d * ((i + 0.5) / sub - 0.5), ys = y + d * ((j + 0.5) / sub - 0.5);
                    const double a = 0.5 * route(xs, ys, p);
                    const long long k = std::llround((a - prof.a_min) / prof.step);
                    if (k >= 0 && k < (long long)v.size())
                        v[std::size_t(k)] += w;
                }
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] /= (k == 0 || k + 1 == v.size()) ? 0.5 * prof.step : prof.step;
        return v;
    }

    // Length in theta of the zone part inside the rectangle, by dense sampling.
    inline double visible_length(const FresnelFrame &frame, double a, const Aperture &ap, int samples)
    {
        const double two_pi = 2.0 * std::acos(-1.0);
        int inside = 0;
        for (int k = 0; k < samples; ++k)
        {
            const Point2 q = fz_to_cartesian(frame, a, (k + 0.5) * two_pi / samples);
            if (std::abs(q.x - ap.center_x) <= ap.half_x && std::abs(q.y - ap.center_y) <= ap.half_y)
                ++inside;
        }
        return two_pi * inside / samples;
    }

    // Central-difference determinant of d(x', y') / d(a, theta).
    inline double jacobian_fd(const FresnelFrame &frame, double a, double theta, double ha, double ht)
    {
        const Point2 ap = fz_to_frame(frame, a + ha, theta), am = fz_to_frame(frame, a - ha, theta);
        const Point2 tp = fz_to_frame(frame, a, theta + ht), tm = fz_to_frame(frame, a, theta - ht);
        const double xa = (ap.x - am.x) / (2 * ha), ya = (ap.y - am.y) / (2 * ha);
        const double xt = (tp.x - tm.x) / (2 * ht), yt = (tp.y - tm.y) / (2 * ht);
        return xa * yt - xt * ya;
    }

    // Direct transform sum_i w_i v_i e^{j phase(a_i)} e^{-j 4 pi f a_i / c} of a sampled zone profile,
    // with f measured from the carrier and the phase given relative to it.
    inline std::complex<double> zone_transform(const IntensityProfile &prof, const std::function<double(double)> &phase,
                                               double f_offset)
    {
        const double pi = std::acos(-1.0);
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < prof.size(); ++i)
        {
            const double a = prof.a(i);
            const double w = (i == 0 || i + 1 == prof.size()) ? 0.5 * prof.step : prof.step;
            s += w * prof.v[i] * std::polar(1.0, phase(a) - 4.0 * pi * f_offset * (a - prof.a_min) / c);
        }
        return s;
    }

    // Element-by-element equivalent channel with the centered path loss and complex weights.
    inline std::complex<double> element_sum(int n1, int n2, double d, const Placement &p,
                                            const std::vector<double> &phases, double f, int n_bs = 1)
    {
        const double pi = std::acos(-1.0);
        std::complex<double> s = 0.0;
        std::size_t n = 0;
        for (const auto &[x, y] : element_centers(n1, n2, d))
        {
            const Vec3 r(x, y, 0.0);
            const double l1 = (r - p.bs).norm(), l2 = (r - p.ue).norm();
            const double amp = c * c / (4.0 * pi * pi * f * f * l1 * l2);
            const double cyc = f * (l1 + l2) / c;
            s += amp * std::polar(1.0, phases[n++] - 2.0 * pi * (cyc - std::floor(cyc)));
        }
        return std::sqrt(double(n_bs)) * s;
    }

    inline double sinc(double x)
    {
        const double pi = std::acos(-1.0);
        return x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
    }
}

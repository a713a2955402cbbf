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

#include "fzbf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

namespace fzbf
{
    void SystemConfig::validate() const
    {
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("bandwidth must be positive");
        if (!(carrier_hz > bandwidth_hz / 2.0))
            throw std::invalid_argument("carrier frequency must exceed half the bandwidth");
        if (subcarriers < 1)
            throw std::invalid_argument("subcarrier count must be at least 1");
        if (!(side_m > 0.0))
            throw std::invalid_argument("RIS side length must be positive");
        if (spacing_m < 0.0)
            throw std::invalid_argument("element spacing must be positive");
        if (n1 < 0 || n2 < 0)
            throw std::invalid_argument("element counts must be positive");
        if (spacing_m > 0.0 && n1 > 0 && n2 > 0)
        {
            const double limit = side_m + spacing_m;
            // Tolerate rounding in n * d when n = D / d exactly.
            if (n1 * spacing_m > limit * (1.0 + 1e-12) || n2 * spacing_m > limit * (1.0 + 1e-12))
                throw std::invalid_argument("element grid does not fit on the RIS side length");
        }
        if (n_bs < 1)
            throw std::invalid_argument("BS antenna count must be at least 1");
        if (quantize_bits && *quantize_bits < 1)
            throw std::invalid_argument("phase resolution must be at least 1 bit");
        if (!std::isfinite(noise_psd_dbm_hz) || !std::isfinite(tx_power_dbm))
            throw std::invalid_argument("link budget values must be finite");
    }

    SystemConfig SystemConfig::resolved() const
    {
        validate();
        SystemConfig out = *this;
        if (out.spacing_m == 0.0)
            out.spacing_m = out.wavelength() / 2.0;
        const int fit = int(std::floor(out.side_m / out.spacing_m + 1e-9));
        if (out.n1 == 0)
            out.n1 = std::max(fit, 1);
        if (out.n2 == 0)
            out.n2 = std::max(fit, 1);
        out.validate();
        return out;
    }

    Aperture aperture_of(const SystemConfig &config)
    {
        if (config.n1 <= 0 || config.n2 <= 0 || config.spacing_m <= 0.0)
            throw std::invalid_argument("aperture_of needs a resolved configuration");
        return {0.5 * config.n1 * config.spacing_m, 0.5 * config.n2 * config.spacing_m};
    }

    void Placement::validate() const
    {
        if (!(bs.z() > 0.0) || !(ue.z() > 0.0))
            throw std::invalid_argument("BS and UE must lie strictly above the RIS plane (z > 0)");
        if (!bs.allFinite() || !ue.allFinite())
            throw std::invalid_argument("placement coordinates must be finite");
    }

    ElementGrid::ElementGrid(int n1, int n2, double spacing)
        : n1_(n1), n2_(n2), spacing_(spacing)
    {
        if (n1 < 1 || n2 < 1 || !(spacing > 0.0))
            throw std::invalid_argument("element grid needs positive counts and spacing");
        x_.resize(std::size_t(n1) * std::size_t(n2));
        y_.resize(x_.size());
        const double c1 = 0.5 * (n1 + 1), c2 = 0.5 * (n2 + 1);
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2)
            {
                const std::size_t n = index(i1, i2);
                x_[n] = (double(i1 + 1) - c1) * spacing;
                y_[n] = (double(i2 + 1) - c2) * spacing;
            }
    }

    ElementGrid build_ris_grid(const SystemConfig &config)
    {
        const SystemConfig r = config.resolved();
        return ElementGrid(r.n1, r.n2, r.spacing_m);
    }

    namespace rng
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
        {
            return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 1));
        }
    }

    namespace
    {
        // 53-bit uniform double in [0, 1).
        double uniform01(std::mt19937_64 &gen)
        {
            return double(gen() >> 11) * 0x1.0p-53;
        }

        double uniform(std::mt19937_64 &gen, DistanceRange r)
        {
            return r.min + (r.max - r.min) * uniform01(gen);
        }

        Vec3 hemisphere_direction(std::mt19937_64 &gen)
        {
            // cos(polar) uniform on (0, 1] gives an area-uniform upper hemisphere.
            const double cz = 1.0 - uniform01(gen);
            const double az = two_pi * uniform01(gen);
            const double s = std::sqrt(std::max(0.0, 1.0 - cz * cz));
            return {s * std::cos(az), s * std::sin(az), cz};
        }

        void check_range(DistanceRange r, const char *what)
        {
            if (!(r.min > 0.0) || !(r.max >= r.min) || !std::isfinite(r.max))
                throw std::invalid_argument(std::string("invalid distance range for ") + what);
        }
    }

    Placement sample_placement(std::uint64_t seed, DistanceRange bs_range, DistanceRange ue_range)
    {
        check_range(bs_range, "BS");
        check_range(ue_range, "UE");
        std::mt19937_64 gen(seed);
        Placement p;
        p.bs = uniform(gen, bs_range) * hemisphere_direction(gen);
        p.ue = uniform(gen, ue_range) * hemisphere_direction(gen);
        return p;
    }

    DelayExtent delay_extent(const ElementGrid &grid, const Placement &p)
    {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const Vec3 r = grid.position(n);
            const double t = ((r - p.bs).norm() + (r - p.ue).norm()) / speed_of_light;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        return {lo, hi};
    }

    namespace
    {
        double route(const Placement &p, double x, double y)
        {
            const Vec3 r(x, y, 0.0);
            return (r - p.bs).norm() + (r - p.ue).norm();
        }

        // Route length is convex along a segment; golden-section search.
        double segment_min(const Placement &p, Vec3 a, Vec3 b)
        {
            constexpr double g = 0.6180339887498949;
            double lo = 0.0, hi = 1.0;
            auto f = [&](double s)
            {
                const Vec3 q = a + s * (b - a);
                return route(p, q.x(), q.y());
            };
            double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
            double f1 = f(m1), f2 = f(m2);
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it)
            {
                if (f1 < f2)
                {
                    hi = m2, m2 = m1, f2 = f1;
                    m1 = hi - g * (hi - lo), f1 = f(m1);
                }
                else
                {
                    lo = m1, m1 = m2, f1 = f2;
                    m2 = lo + g * (hi - lo), f2 = f(m2);
                }
            }
            return std::min({f(lo), f(hi), f1, f2});
        }
    }

    DelayExtent aperture_delay_extent(const Aperture &ap, const Placement &p)
    {
        const double hx = ap.half_x, hy = ap.half_y, cx = ap.center_x, cy = ap.center_y;
        const Vec3 corners[4] = {
            {cx - hx, cy - hy, 0}, {cx + hx, cy - hy, 0}, {cx + hx, cy + hy, 0}, {cx - hx, cy + hy, 0}};

        double hi = 0.0;
        for (const auto &c : corners)
            hi = std::max(hi, route(p, c.x(), c.y()));

        // Specular point: where the segment from the mirrored BS to the UE crosses z = 0.
        const double s = p.bs.z() / (p.bs.z() + p.ue.z());
        const double sx = p.bs.x() + s * (p.ue.x() - p.bs.x());
        const double sy = p.bs.y() + s * (p.ue.y() - p.bs.y());
        double lo;
        if (std::abs(sx - cx) <= hx && std::abs(sy - cy) <= hy)
            lo = route(p, sx, sy);
        else
        {
            lo = std::numeric_limits<double>::infinity();
            for (int e = 0; e < 4; ++e)
                lo = std::min(lo, segment_min(p, corners[e], corners[(e + 1) % 4]));
        }
        return {lo / speed_of_light, hi / speed_of_light};
    }

    RouteTable route_table(const ElementGrid &grid, const Placement &p)
    {
        RouteTable t;
        t.route_m.resize(grid.size());
        t.length_product_m2.resize(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const Vec3 r = grid.position(n);
            const double l1 = (r - p.bs).norm(), l2 = (r - p.ue).norm();
            t.route_m[n] = l1 + l2;
            t.length_product_m2[n] = l1 * l2;
        }
        return t;
    }

    Vec3 BSArray::offset(int m) const
    {
        const int m1 = m / n2, m2 = m % n2;
        return (double(m1) - 0.5 * (n1 - 1)) * spacing_m * u1 + (double(m2) - 0.5 * (n2 - 1)) * spacing_m * u2;
    }

    BSArray make_bs_array(const Placement &p, int n1, int n2, double spacing_m)
    {
        if (n1 < 1 || n2 < 1 || spacing_m < 0.0)
            throw std::invalid_argument("BS array needs positive counts and nonnegative spacing");
        BSArray a;
        a.n1 = n1;
        a.n2 = n2;
        a.spacing_m = spacing_m;
        a.departure = (-p.bs).normalized();
        Vec3 ref = Vec3::UnitZ();
        if (std::abs(a.departure.dot(ref)) > 0.9)
            ref = Vec3::UnitX();
        a.u1 = a.departure.cross(ref).normalized();
        a.u2 = a.departure.cross(a.u1).normalized();
        return a;
    }
}

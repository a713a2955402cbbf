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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fzbf/fresnel.hpp"
#include "oracles.hpp"

using namespace fzbf;

namespace
{
    Placement demo()
    {
        return {Vec3(6.4, 5.0, 14.4), Vec3(-4.8, 5.0, 6.4)};
    }

    SystemConfig sized(double side)
    {
        SystemConfig c;
        c.side_m = side;
        return c.resolved();
    }

    std::vector<Placement> placements(int n)
    {
        std::vector<Placement> out{demo()};
        for (int i = 0; i < n; ++i)
            out.push_back(sample_placement(rng::trial_seed(99, std::uint64_t(i)), {}, {}));
        return out;
    }

    // Zone parameters spread over the visible range of a unit aperture.
    std::vector<double> zone_axes(const Placement &p, int n)
    {
        const DelayExtent e = aperture_delay_extent(Aperture{}, p);
        std::vector<double> a;
        for (int i = 1; i <= n; ++i)
            a.push_back(0.5 * speed_of_light * (e.t_min + (e.t_max - e.t_min) * i / (n + 1.0)));
        return a;
    }
}

TEST(Frame, FociMapToTheAxis)
{
    for (const Placement &p : placements(30))
    {
        const FresnelFrame f = build_frame(p);
        const Point2 b = f.to_frame(p.bs.x(), p.bs.y());
        const Point2 u = f.to_frame(p.ue.x(), p.ue.y());
        EXPECT_NEAR(b.x, -f.u, 1e-12);
        EXPECT_NEAR(b.y, 0.0, 1e-12);
        EXPECT_NEAR(u.x, f.u, 1e-12);
        EXPECT_NEAR(u.y, 0.0, 1e-12);
        EXPECT_GE(f.u, 0.0);
        EXPECT_GT(f.alpha, -pi);
        EXPECT_LE(f.alpha, pi);
        EXPECT_DOUBLE_EQ(f.z_bs, p.bs.z());
        EXPECT_DOUBLE_EQ(f.z_ue, p.ue.z());
    }
}

TEST(Frame, CircularCaseWhenProjectionsCoincide)
{
    const FresnelFrame f = build_frame({Vec3(0.3, -0.2, 5.0), Vec3(0.3, -0.2, 8.0)});
    EXPECT_EQ(f.u, 0.0);
    EXPECT_EQ(f.alpha, 0.0);
    const EllipseParams e = ellipse_params(f, 7.0);
    EXPECT_DOUBLE_EQ(e.b, e.a);
}

TEST(Frame, RoundTrip)
{
    for (const Placement &p : placements(30))
    {
        const FresnelFrame f = build_frame(p);
        for (double x : {-0.5, -0.1, 0.0, 0.37})
            for (double y : {-0.5, 0.2, 0.5})
            {
                const Point2 q = f.to_frame(x, y);
                const Point2 r = f.from_frame(q.x, q.y);
                EXPECT_LT(std::hypot(r.x - x, r.y - y), 1e-9);
            }
        for (double a : zone_axes(p, 7))
            for (double th = 0.1; th < two_pi; th += 0.7)
            {
                const Point2 q = fz_to_cartesian(f, a, th);
                const Point2 r = f.to_frame(q.x, q.y);
                const Point2 s = fz_to_frame(f, a, th);
                EXPECT_LT(std::hypot(r.x - s.x, r.y - s.y), 1e-9);
            }
    }
}

TEST(Frame, ZonePointsLieOnTheirEllipse)
{
    for (const Placement &p : placements(30))
    {
        const FresnelFrame f = build_frame(p);
        for (double a : zone_axes(p, 9))
            for (double th = 0.0; th < two_pi; th += 0.37)
            {
                const Point2 q = fz_to_cartesian(f, a, th);
                EXPECT_NEAR(0.5 * oracle::route(q.x, q.y, p), a, 1e-9 * a);
                EXPECT_NEAR(a_of_point(f, q.x, q.y), a, 1e-9 * a);
            }
    }
}

TEST(Frame, EllipseParamsRejectAxisInsideFoci)
{
    const FresnelFrame f = build_frame(demo());
    EXPECT_THROW(ellipse_params(f, 0.5 * f.u), std::invalid_argument);
    const EllipseParams e = ellipse_params(f, zone_axes(demo(), 1)[0]);
    EXPECT_GT(e.b, 0.0);
    EXPECT_GT(e.eta0, 0.0);
}

TEST(Jacobian, MatchesFiniteDifferences)
{
    for (const Placement &p : placements(30))
    {
        const FresnelFrame f = build_frame(p);
        for (double a : zone_axes(p, 5))
            for (double th = 0.05; th < two_pi; th += 0.5)
            {
                const double j = jacobian(f, a, th);
                const double fd = oracle::jacobian_fd(f, a, th, 1e-5, 1e-5);
                EXPECT_NEAR(j, fd, 1e-6 * std::abs(fd)) << "a=" << a << " theta=" << th;
            }
    }
}

TEST(Jacobian, ClosedFormIntegral)
{
    const FresnelFrame f = build_frame(demo());
    for (double a : zone_axes(demo(), 4))
    {
        const JacobianTerms t = jacobian_terms(f, a);
        const int n = 20000;
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += t(0.3 + 2.1 * (k + 0.5) / n) * 2.1 / n;
        EXPECT_NEAR(t.integral(0.3, 2.4), s, 1e-8 * std::abs(s));
    }
}

TEST(Jacobian, PositiveOnVisibleArcs)
{
    for (const Placement &p : placements(30))
    {
        const FresnelFrame f = build_frame(p);
        for (double a : zone_axes(p, 11))
            for (const Arc &arc : visible_arcs(f, a, 1.0))
                for (int k = 0; k <= 10; ++k)
                    EXPECT_GT(jacobian(f, a, arc.lo + arc.length() * k / 10.0), 0.0);
    }
}

TEST(Jacobian, MonostaticEqualsSemiMajorAxis)
{
    const FresnelFrame f = build_frame({Vec3(0, 0, 6.0), Vec3(0, 0, 6.0)});
    for (double a : {6.001, 6.01, 6.02})
        for (double th : {0.0, 1.0, 4.0})
            EXPECT_NEAR(jacobian(f, a, th), a, 1e-12 * a);
}

TEST(Arcs, MatchDenseSampling)
{
    const Aperture ap{};
    for (const Placement &p : placements(20))
    {
        const FresnelFrame f = build_frame(p);
        for (double a : zone_axes(p, 13))
        {
            double len = 0.0;
            for (const Arc &arc : visible_arcs(f, a, ap))
            {
                EXPECT_LE(arc.lo, arc.hi);
                len += arc.length();
            }
            EXPECT_NEAR(len, oracle::visible_length(f, a, ap, 200000), 1e-3);
        }
    }
}

TEST(Arcs, OffsetApertureMatchesDenseSampling)
{
    const Aperture ap{0.2, 0.5, 0.3, 0.0};
    const FresnelFrame f = build_frame(demo());
    const DelayExtent e = aperture_delay_extent(ap, demo());
    for (int i = 1; i < 10; ++i)
    {
        const double a = 0.5 * speed_of_light * (e.t_min + e.spread() * i / 10.0);
        double len = 0.0;
        for (const Arc &arc : visible_arcs(f, a, ap))
            len += arc.length();
        EXPECT_NEAR(len, oracle::visible_length(f, a, ap, 200000), 1e-3);
    }
}

TEST(Intensity, MonostaticFullCircle)
{
    const Placement p{Vec3(0, 0, 2.0), Vec3(0, 0, 2.0)};
    const SystemConfig r = sized(1.0);
    const IntensityProfile prof = intensity_profile(build_frame(p), r, p);
    const double g0 = path_gain_constant(r, p, r.carrier_hz);
    int checked = 0;
    for (std::size_t i = 0; i < prof.size(); ++i)
    {
        const double a = prof.a(i);
        if (a * a - 4.0 < 0.45 * 0.45 && a > 2.0)
        {
            EXPECT_NEAR(prof.v[i], two_pi * g0 * a, 1e-9 * two_pi * g0 * a);
            ++checked;
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(Intensity, NonnegativeAndFinelySampled)
{
    for (const Placement &p : placements(10))
    {
        const SystemConfig r = sized(1.0);
        const IntensityProfile prof = intensity_profile(build_frame(p), r, p);
        EXPECT_LE(prof.step, 0.5 * r.spacing_m);
        EXPECT_LE(2.0 * two_pi * (r.carrier_hz + 0.5 * r.bandwidth_hz) * 2.0 * prof.step / speed_of_light, two_pi);
        for (double v : prof.v)
            EXPECT_GE(v, 0.0);
    }
}

TEST(Intensity, ApertureWeightConservation)
{
    for (double side : {0.25, 0.5, 1.0})
        for (const Placement &p : placements(10))
        {
            const SystemConfig r = sized(side);
            const IntensityProfile prof = intensity_profile(build_frame(p), r, p);
            const double d_eff = r.n1 * r.spacing_m;
            EXPECT_NEAR(prof.total_weight(), prof.g0 * d_eff * d_eff, 5e-3 * prof.g0 * d_eff * d_eff);
        }
}

TEST(Intensity, ExactAmplitudeMatchesGridQuadrature)
{
    for (const Placement &p : placements(5))
    {
        const SystemConfig r = sized(1.0);
        const IntensityProfile prof = intensity_profile(build_frame(p), r, p, AmplitudeModel::exact);
        const double d_eff = r.n1 * r.spacing_m;
        const double ref = oracle::exact_aperture_weight(d_eff, prof.g0, p, 400);
        EXPECT_NEAR(prof.total_weight(), ref, 5e-3 * ref);
    }
}

namespace
{
    double relative_l2(const std::vector<double> &v, const std::vector<double> &ref, std::size_t skip)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = skip; i + skip < v.size(); ++i)
        {
            num += (v[i] - ref[i]) * (v[i] - ref[i]);
            den += ref[i] * ref[i];
        }
        return std::sqrt(num / den);
    }
}

TEST(Intensity, MatchesElementCountAtDemoPlacement)
{
    const SystemConfig r = sized(0.5);
    const IntensityProfile prof = intensity_profile(build_frame(demo()), r, demo());
    const std::vector<double> h = oracle::histogram_profile(r.n1, r.n2, r.spacing_m, demo(), prof);
    EXPECT_LT(relative_l2(prof.v, h, 0), 0.03);
}

TEST(Intensity, MatchesSubCellHistogram)
{
    // End bins average v over half a step next to a square-root edge, so only interior bins
    // are compared with point samples.
    for (const Placement &p : placements(10))
    {
        const SystemConfig r = sized(0.5);
        const IntensityProfile prof = intensity_profile(build_frame(p), r, p);
        const std::vector<double> h = oracle::histogram_profile(r.n1, r.n2, r.spacing_m, p, prof, 6);
        EXPECT_LT(relative_l2(prof.v, h, 1), 0.01);
    }
}

TEST(Intensity, InteriorSpecularPointStartsAtFullZone)
{
    // Specular point inside the aperture: the first zones are whole ellipses.
    const Placement p{Vec3(0.1, 0.05, 5.0), Vec3(-0.1, 0.0, 6.0)};
    const SystemConfig r = sized(0.5);
    const IntensityProfile prof = intensity_profile(build_frame(p), r, p);
    EXPECT_GT(prof.v[0], 0.9 * prof.v[1]);
}

TEST(Intensity, ProfileCsvColumns)
{
    const SystemConfig r = sized(0.25);
    const IntensityProfile prof = intensity_profile(build_frame(demo()), r, demo());
    std::ostringstream os;
    write_profile_csv(prof, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "a_m,t_s,v,v_t");
    std::size_t rows = 0;
    while (std::getline(is, line))
        ++rows;
    EXPECT_EQ(rows, prof.size());
}

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

// Fresnel-zone coordinates on the RIS plane.
//
// Every point of the z = 0 plane lies on exactly one Fresnel zone, the ellipse of points
// whose route BS -> point -> UE has length 2a. The zone is parameterized by its
// semi-major axis a and an eccentric angle theta:
//
//   x' = a eta0 cos(theta) + x0,   y' = b eta0 sin(theta),   b = sqrt(a^2 - u^2)
//
// in a frame translated to the midpoint of the BS/UE projections and rotated so that the
// BS projects to (-u, 0) and the UE to (+u, 0). Integrating the Jacobian of this map along
// the visible part of each zone gives the reflective intensity v(a); the equivalent channel
// is then the Fourier transform of v(a) e^{j psi(a)} over the delay t = 2a / c.

#pragma once

#include <iosfwd>
#include <vector>

#include "fzbf/scenario.hpp"

namespace fzbf
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    struct FresnelFrame
    {
        double xc = 0.0;
        double yc = 0.0;
        double alpha = 0.0; // rotation, (-pi, pi]
        double u = 0.0;     // half the distance between the projected foci
        double z_bs = 0.0;
        double z_ue = 0.0;

        Point2 to_frame(double x, double y) const;
        Point2 from_frame(double xp, double yp) const;
    };

    // Equal BS/UE projections give u = 0 and alpha = 0 (circular zones).
    FresnelFrame build_frame(const Placement &p);

    struct EllipseParams
    {
        double a = 0.0;
        double b = 0.0;
        double x0 = 0.0;
        double eta0 = 0.0;
        double eta0_sq = 0.0; // negative when the zone does not reach the RIS plane
    };

    // Throws std::invalid_argument when a <= u.
    EllipseParams ellipse_params(const FresnelFrame &frame, double a);

    Point2 fz_to_frame(const FresnelFrame &frame, double a, double theta);
    // RIS-plane coordinates of the zone point (a, theta).
    Point2 fz_to_cartesian(const FresnelFrame &frame, double a, double theta);
    // Half the route length BS -> (x, y, 0) -> UE.
    double a_of_point(const FresnelFrame &frame, double x, double y);

    // Jacobian det d(x', y') / d(a, theta) = c0 + c1 cos(theta) + c2 cos(2 theta).
    struct JacobianTerms
    {
        double c0 = 0.0;
        double c1 = 0.0;
        double c2 = 0.0;

        double operator()(double theta) const;
        // Closed-form integral over [lo, hi].
        double integral(double lo, double hi) const;
    };

    JacobianTerms jacobian_terms(const FresnelFrame &frame, double a);
    double jacobian(const FresnelFrame &frame, double a, double theta);

    struct Arc
    {
        double lo = 0.0;
        double hi = 0.0; // hi may exceed 2 pi for an arc wrapping through theta = 0
        double length() const { return hi - lo; }
    };

    // Maximal theta intervals of the zone that fall inside the aperture rectangle.
    std::vector<Arc> visible_arcs(const FresnelFrame &frame, double a, const Aperture &aperture);
    std::vector<Arc> visible_arcs(const FresnelFrame &frame, double a, double side);

    enum class AmplitudeModel
    {
        centered, // path loss frozen at the RIS center distances
        exact     // 1 / (l_br l_ru) integrated along each zone
    };

    // Reflective intensity on a uniform grid of semi-major axes spanning the aperture.
    struct IntensityProfile
    {
        std::vector<double> v; // per sample, units of g0 * m
        double a_min = 0.0;
        double step = 0.0;
        double g0 = 0.0; // path gain constant at the carrier
        double carrier_hz = 0.0;
        double bandwidth_hz = 0.0;

        std::size_t size() const { return v.size(); }
        double a(std::size_t i) const { return a_min + double(i) * step; }
        double a_max() const { return a(v.size() - 1); }
        double t(std::size_t i) const { return 2.0 * a(i) / speed_of_light; }
        double v_t(std::size_t i) const { return 0.5 * speed_of_light * v[i]; }
        DelayExtent delay() const { return {t(0), t(v.size() - 1)}; }

        // Trapezoid weight of sample i on the a grid.
        double weight(std::size_t i) const;
        // Linear interpolation of v, zero outside [a_min, a_max].
        double v_at(double a) const;

        double total_weight() const; // integral of v(a) da
        double energy() const;       // E_g = integral of v_t^2 dt
    };

    // a-grid spacing: min(d / 2, c / (4 (fc + B / 2))).
    double profile_step_target(const SystemConfig &config);

    IntensityProfile intensity_profile(const FresnelFrame &frame, const SystemConfig &config, const Placement &p,
                                       AmplitudeModel model = AmplitudeModel::centered);
    // Restricted to a sub-rectangle of the surface (the path gain constant stays that of the
    // full configuration).
    IntensityProfile intensity_profile(const FresnelFrame &frame, const SystemConfig &config, const Placement &p,
                                       const Aperture &aperture, AmplitudeModel model = AmplitudeModel::centered);

    // Columns a_m, t_s, v, v_t.
    void write_profile_csv(const IntensityProfile &profile, std::ostream &os);
}

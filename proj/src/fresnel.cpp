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

#include "fzbf/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "fzbf/channel.hpp"
#include "fzbf/csv.hpp"

namespace fzbf
{
    Point2 FresnelFrame::to_frame(double x, double y) const
    {
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        const double dx = x - xc, dy = y - yc;
        return {dx * ca + dy * sa, -dx * sa + dy * ca};
    }

    Point2 FresnelFrame::from_frame(double xp, double yp) const
    {
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        return {xc + xp * ca - yp * sa, yc + xp * sa + yp * ca};
    }

    FresnelFrame build_frame(const Placement &p)
    {
        p.validate();
        FresnelFrame f;
        f.xc = 0.5 * (p.bs.x() + p.ue.x());
        f.yc = 0.5 * (p.bs.y() + p.ue.y());
        const double dx = p.ue.x() - p.bs.x(), dy = p.ue.y() - p.bs.y();
        f.u = 0.5 * std::hypot(dx, dy);
        f.alpha = f.u > 0.0 ? std::atan2(dy, dx) : 0.0;
        f.z_bs = p.bs.z();
        f.z_ue = p.ue.z();
        return f;
    }

    EllipseParams ellipse_params(const FresnelFrame &frame, double a)
    {
        const double u = frame.u;
        if (!(a > u))
            throw std::invalid_argument("semi-major axis must exceed half the focal projection distance");
        const double zb2 = frame.z_bs * frame.z_bs, zu2 = frame.z_ue * frame.z_ue;
        EllipseParams e;
        e.a = a;
        const double b2 = (a - u) * (a + u);
        e.b = std::sqrt(b2);
        e.x0 = u * (zb2 - zu2) / (4.0 * b2);
        const double dz = zu2 - zb2;
        e.eta0_sq = 1.0 + dz * dz / (16.0 * b2 * b2) - 0.5 * (zb2 + zu2) / b2;
        e.eta0 = std::sqrt(std::max(0.0, e.eta0_sq));
        return e;
    }

    Point2 fz_to_frame(const FresnelFrame &frame, double a, double theta)
    {
        const EllipseParams e = ellipse_params(frame, a);
        return {a * e.eta0 * std::cos(theta) + e.x0, e.b * e.eta0 * std::sin(theta)};
    }

    Point2 fz_to_cartesian(const FresnelFrame &frame, double a, double theta)
    {
        const Point2 q = fz_to_frame(frame, a, theta);
        return frame.from_frame(q.x, q.y);
    }

    namespace
    {
        // Half route length in frame coordinates; BS at (-u, 0, z_bs), UE at (u, 0, z_ue).
        double half_route(const FresnelFrame &f, double xp, double yp)
        {
            const double l1 = std::sqrt((xp + f.u) * (xp + f.u) + yp * yp + f.z_bs * f.z_bs);
            const double l2 = std::sqrt((xp - f.u) * (xp - f.u) + yp * yp + f.z_ue * f.z_ue);
            return 0.5 * (l1 + l2);
        }
    }

    double a_of_point(const FresnelFrame &frame, double x, double y)
    {
        const Point2 q = frame.to_frame(x, y);
        return half_route(frame, q.x, q.y);
    }

    double JacobianTerms::operator()(double theta) const
    {
        return c0 + c1 * std::cos(theta) + c2 * std::cos(2.0 * theta);
    }

    double JacobianTerms::integral(double lo, double hi) const
    {
        return c0 * (hi - lo) + c1 * (std::sin(hi) - std::sin(lo)) + 0.5 * c2 * (std::sin(2.0 * hi) - std::sin(2.0 * lo));
    }

    JacobianTerms jacobian_terms(const FresnelFrame &frame, double a)
    {
        // With E = eta0^2 and ' = d/da (b' = a / b):
        //   det = b E cos^2 + (a^2 / b) E sin^2 + a b E' / 2 + x0' b eta0 cos
        const EllipseParams e = ellipse_params(frame, a);
        const double u = frame.u, b = e.b, b2 = b * b;
        const double zb2 = frame.z_bs * frame.z_bs, zu2 = frame.z_ue * frame.z_ue;
        const double sigma = zb2 + zu2;
        const double delta = 0.25 * (zu2 - zb2);
        const double E = std::max(0.0, e.eta0_sq);
        const double dE = a * (sigma / (b2 * b2) - 4.0 * delta * delta / (b2 * b2 * b2));
        const double dx0 = -0.5 * u * (zb2 - zu2) * a / (b2 * b2);

        JacobianTerms j;
        j.c0 = E * (b2 + 0.5 * u * u) / b + 0.5 * a * b * dE;
        j.c1 = dx0 * b * e.eta0;
        j.c2 = -0.5 * E * u * u / b;
        return j;
    }

    double jacobian(const FresnelFrame &frame, double a, double theta)
    {
        return std::abs(jacobian_terms(frame, a)(theta));
    }

    namespace
    {
        // P cos(theta) + Q sin(theta) <= R
        struct HalfPlane
        {
            double p, q, r;
            bool holds(double theta) const { return p * std::cos(theta) + q * std::sin(theta) <= r; }
        };

        constexpr double root_merge_tol = 1e-12;
    }

    std::vector<Arc> visible_arcs(const FresnelFrame &frame, double a, const Aperture &ap)
    {
        const EllipseParams e = ellipse_params(frame, a);
        // A zone at the bottom of the route-length bowl collapses to a point; it still
        // carries a finite Jacobian integral when that point is on the aperture.
        if (e.eta0_sq < -1e-9)
            return {};
        const double major = a * e.eta0, minor = e.b * e.eta0;
        const double ca = std::cos(frame.alpha), sa = std::sin(frame.alpha);
        const double ox = frame.xc + e.x0 * ca, oy = frame.yc + e.x0 * sa;

        // x = ox + major ca cos - minor sa sin,  y = oy + major sa cos + minor ca sin
        const double px = major * ca, qx = -minor * sa;
        const double py = major * sa, qy = minor * ca;
        const HalfPlane planes[4] = {
            {px, qx, ap.center_x + ap.half_x - ox},
            {-px, -qx, ap.half_x - ap.center_x + ox},
            {py, qy, ap.center_y + ap.half_y - oy},
            {-py, -qy, ap.half_y - ap.center_y + oy},
        };

        std::vector<double> cuts = {0.0, two_pi};
        for (const HalfPlane &h : planes)
        {
            const double rho = std::hypot(h.p, h.q);
            if (h.r >= rho)
                continue;
            if (h.r <= -rho)
                return {};
            const double phi = std::atan2(h.q, h.p);
            const double half = std::acos(h.r / rho);
            cuts.push_back(wrap_phase(phi - half));
            cuts.push_back(wrap_phase(phi + half));
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < root_merge_tol; }),
                   cuts.end());
        cuts.back() = two_pi;

        std::vector<Arc> arcs;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            const bool inside = std::all_of(std::begin(planes), std::end(planes),
                                            [mid](const HalfPlane &h) { return h.holds(mid); });
            if (!inside)
                continue;
            if (!arcs.empty() && std::abs(arcs.back().hi - cuts[i]) < root_merge_tol)
                arcs.back().hi = cuts[i + 1];
            else
                arcs.push_back({cuts[i], cuts[i + 1]});
        }
        // Join the piece ending at 2 pi with the one starting at 0.
        if (arcs.size() > 1 && arcs.front().lo == 0.0 && arcs.back().hi == two_pi)
        {
            arcs.back().hi = two_pi + arcs.front().hi;
            arcs.erase(arcs.begin());
        }
        return arcs;
    }

    std::vector<Arc> visible_arcs(const FresnelFrame &frame, double a, double side)
    {
        return visible_arcs(frame, a, Aperture{0.5 * side, 0.5 * side});
    }

    double IntensityProfile::weight(std::size_t i) const
    {
        if (v.size() < 2)
            return 0.0;
        return (i == 0 || i + 1 == v.size()) ? 0.5 * step : step;
    }

    double IntensityProfile::v_at(double a_query) const
    {
        if (v.empty() || step <= 0.0)
            return 0.0;
        const double s = (a_query - a_min) / step;
        if (s < 0.0 || s > double(v.size() - 1))
            return 0.0;
        const std::size_t i = std::min(std::size_t(s), v.size() - 2);
        const double f = s - double(i);
        return (1.0 - f) * v[i] + f * v[i + 1];
    }

    double IntensityProfile::total_weight() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += weight(i) * v[i];
        return s;
    }

    double IntensityProfile::energy() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += weight(i) * v[i] * v[i];
        return 0.5 * speed_of_light * s;
    }

    double profile_step_target(const SystemConfig &config)
    {
        const SystemConfig r = config.resolved();
        const double nyquist = speed_of_light / (4.0 * (r.carrier_hz + 0.5 * r.bandwidth_hz));
        return std::min(0.5 * r.spacing_m, nyquist * (1.0 - 1e-9));
    }

    namespace
    {
        double zone_intensity_centered(const FresnelFrame &frame, double a, const Aperture &ap)
        {
            if (!(a > frame.u))
                return 0.0;
            const std::vector<Arc> arcs = visible_arcs(frame, a, ap);
            if (arcs.empty())
                return 0.0;
            const JacobianTerms j = jacobian_terms(frame, a);
            double s = 0.0;
            for (const Arc &arc : arcs)
                s += j.integral(arc.lo, arc.hi);
            return std::max(0.0, s);
        }

        // Integral of J(a, theta) * (R_br R_ru) / (l_br l_ru) along the visible arcs.
        double zone_intensity_exact(const FresnelFrame &frame, double a, const Aperture &ap, double r_br, double r_ru)
        {
            if (!(a > frame.u))
                return 0.0;
            const std::vector<Arc> arcs = visible_arcs(frame, a, ap);
            if (arcs.empty())
                return 0.0;
            const EllipseParams e = ellipse_params(frame, a);
            const JacobianTerms j = jacobian_terms(frame, a);
            auto integrand = [&](double theta)
            {
                const double xp = a * e.eta0 * std::cos(theta) + e.x0, yp = e.b * e.eta0 * std::sin(theta);
                const double l1 = std::sqrt((xp + frame.u) * (xp + frame.u) + yp * yp + frame.z_bs * frame.z_bs);
                const double l2 = std::sqrt((xp - frame.u) * (xp - frame.u) + yp * yp + frame.z_ue * frame.z_ue);
                return j(theta) * (r_br * r_ru) / (l1 * l2);
            };
            double s = 0.0;
            for (const Arc &arc : arcs)
            {
                const int pieces = std::max(1, int(std::ceil(arc.length() / (pi / 8.0))));
                const double w = arc.length() / pieces;
                for (int k = 0; k < pieces; ++k)
                    s += boost::math::quadrature::gauss<double, 20>::integrate(integrand, arc.lo + k * w,
                                                                               arc.lo + (k + 1) * w);
            }
            return std::max(0.0, s);
        }
    }

    IntensityProfile intensity_profile(const FresnelFrame &frame, const SystemConfig &config, const Placement &p,
                                       AmplitudeModel model)
    {
        const SystemConfig r = config.resolved();
        return intensity_profile(frame, r, p, aperture_of(r), model);
    }

    IntensityProfile intensity_profile(const FresnelFrame &frame, const SystemConfig &config, const Placement &p,
                                       const Aperture &ap, AmplitudeModel model)
    {
        const SystemConfig r = config.resolved();
        const DelayExtent ext = aperture_delay_extent(ap, p);
        const double a_lo = 0.5 * speed_of_light * ext.t_min;
        const double a_hi = 0.5 * speed_of_light * ext.t_max;
        const double target = profile_step_target(r);

        IntensityProfile prof;
        prof.carrier_hz = r.carrier_hz;
        prof.bandwidth_hz = r.bandwidth_hz;
        prof.g0 = path_gain_constant(r, p, r.carrier_hz);
        prof.a_min = a_lo;
        const std::size_t n = std::max<std::size_t>(2, std::size_t(std::ceil((a_hi - a_lo) / target)) + 1);
        prof.step = (a_hi - a_lo) / double(n - 1);
        prof.v.assign(n, 0.0);

        const long long count = (long long)n;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < count; ++i)
        {
            // End samples take the one-sided limit; an interior specular point makes v jump at a_min.
            const double a = std::clamp(prof.a(std::size_t(i)), a_lo + 1e-6 * prof.step, a_hi - 1e-6 * prof.step);
            const double s = model == AmplitudeModel::centered
                                 ? zone_intensity_centered(frame, a, ap)
                                 : zone_intensity_exact(frame, a, ap, p.bs_distance(), p.ue_distance());
            prof.v[std::size_t(i)] = prof.g0 * s;
        }
        return prof;
    }

    void write_profile_csv(const IntensityProfile &profile, std::ostream &os)
    {
        os << "a_m,t_s,v,v_t\n";
        for (std::size_t i = 0; i < profile.size(); ++i)
            os << csv::num(profile.a(i)) << ',' << csv::num(profile.t(i)) << ',' << csv::num(profile.v[i]) << ','
               << csv::num(profile.v_t(i)) << '\n';
    }
}

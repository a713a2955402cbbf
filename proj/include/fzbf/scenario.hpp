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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace fzbf
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double two_pi = 2.0 * pi;

    using Vec3 = Eigen::Vector3d;

    // System configuration. Zero spacing means half a carrier wavelength, zero element
    // counts mean floor(side / spacing). Call resolved() before using derived values.
    struct SystemConfig
    {
        double carrier_hz = 30e9;
        double bandwidth_hz = 1.5e9;
        int subcarriers = 128;
        double side_m = 1.0;
        double spacing_m = 0.0;
        int n1 = 0;
        int n2 = 0;
        int n_bs = 1;
        double noise_psd_dbm_hz = -170.0;
        double tx_power_dbm = 10.0;
        std::optional<int> quantize_bits;

        // Copy with spacing and element counts filled in; throws std::invalid_argument
        // when an invariant is violated.
        SystemConfig resolved() const;

        // Throws std::invalid_argument on the first violated invariant.
        void validate() const;

        double wavelength() const { return speed_of_light / carrier_hz; }
    };

    // Continuous rectangle covered by the element cells.
    struct Aperture
    {
        double half_x = 0.5;
        double half_y = 0.5;
        double center_x = 0.0;
        double center_y = 0.0;
    };

    // Aperture of a resolved config: n1*d by n2*d, centered at the origin.
    Aperture aperture_of(const SystemConfig &config);

    struct Placement
    {
        Vec3 bs = Vec3::Zero();
        Vec3 ue = Vec3::Zero();

        double bs_distance() const { return bs.norm(); }
        double ue_distance() const { return ue.norm(); }
        void validate() const;
    };

    // RIS element grid in the z = 0 plane. Element (i1, i2), zero based, has linear index
    // n = i1 * n2 + i2.
    class ElementGrid
    {
    public:
        ElementGrid() = default;
        ElementGrid(int n1, int n2, double spacing);

        int rows() const { return n1_; }
        int cols() const { return n2_; }
        double spacing() const { return spacing_; }
        std::size_t size() const { return x_.size(); }

        std::size_t index(int i1, int i2) const { return std::size_t(i1) * std::size_t(n2_) + std::size_t(i2); }
        std::pair<int, int> indices(std::size_t n) const { return {int(n / std::size_t(n2_)), int(n % std::size_t(n2_))}; }

        Vec3 position(std::size_t n) const { return {x_[n], y_[n], 0.0}; }
        const std::vector<double> &xs() const { return x_; }
        const std::vector<double> &ys() const { return y_; }

    private:
        int n1_ = 0;
        int n2_ = 0;
        double spacing_ = 0.0;
        std::vector<double> x_;
        std::vector<double> y_;
    };

    // Element (n1, n2) (one based) sits at ((n1 - (N1 + 1) / 2) d, (n2 - (N2 + 1) / 2) d, 0).
    ElementGrid build_ris_grid(const SystemConfig &config);

    struct DistanceRange
    {
        double min = 7.0;
        double max = 13.0;
    };

    // Uniform direction on the upper hemisphere, radius uniform in the range.
    // Deterministic for a fixed seed on every platform (no std distributions).
    Placement sample_placement(std::uint64_t seed, DistanceRange bs_range, DistanceRange ue_range);

    struct DelayExtent
    {
        double t_min = 0.0;
        double t_max = 0.0;
        double spread() const { return t_max - t_min; }
    };

    // Exhaustive scan of t_n = (|r_n - r_bs| + |r_n - r_ue|) / c over the elements.
    DelayExtent delay_extent(const ElementGrid &grid, const Placement &p);

    // Same quantity over the continuous aperture rectangle.
    DelayExtent aperture_delay_extent(const Aperture &aperture, const Placement &p);

    // Per element route data: l_br + l_ru and the product l_br * l_ru.
    struct RouteTable
    {
        std::vector<double> route_m;
        std::vector<double> length_product_m2;
    };
    RouteTable route_table(const ElementGrid &grid, const Placement &p);

    // Two-dimensional BS array facing the RIS center. Offsets are centered on r_bs.
    struct BSArray
    {
        int n1 = 1;
        int n2 = 1;
        double spacing_m = 0.0;
        Vec3 u1 = Vec3::UnitX();
        Vec3 u2 = Vec3::UnitY();
        Vec3 departure = Vec3::UnitZ(); // unit vector from the BS toward the RIS center

        int size() const { return n1 * n2; }
        Vec3 offset(int m) const;
        // Direction cosines of the departure vector along u1 and u2.
        double xi1() const { return u1.dot(departure); }
        double xi2() const { return u2.dot(departure); }
    };

    // Array with u1, u2 orthonormal and perpendicular to the BS -> RIS direction.
    BSArray make_bs_array(const Placement &p, int n1, int n2, double spacing_m);

    namespace rng
    {
        std::uint64_t splitmix64(std::uint64_t x);
        // Seed for trial `index` of a run with the given master seed.
        std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);
    }
}

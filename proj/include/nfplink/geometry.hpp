// SPDX-License-Identifier: Apache-2.0
//
// nfplink - link-level simulator for UAV-relayed mmWave backhaul
// Copyright (C) 2026 the nfplink contributors
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

#ifndef NFPLINK_GEOMETRY_HPP
#define NFPLINK_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

namespace nfplink
{

// Circular flight-path geometry. The relay flies a circle of diameter L_u1
// at altitude H_u whose center sits on the source-destination axis, L_sc
// horizontal meters from the source terminal and L_dc = L_sd - L_sc from the
// destination terminal. Only the semicircle theta in [0, pi] is simulated;
// the other half duplicates it because the link lengths depend on sin^2.
struct PathGeometry
{
    double l_sd_m = 19000.0;  // horizontal source-destination distance
    double l_u1_m = 3500.0;   // circle diameter
    double l_sc_m = 11600.0;  // horizontal source-to-center distance
    double h_u_m = 3000.0;    // relay altitude above the terminal plane
    double psi_s_min_rad = deg2rad(10.0); // source-side minimum elevation
    double psi_d_min_rad = deg2rad(15.0); // destination-side minimum elevation

    double l_dc_m() const { return l_sd_m - l_sc_m; }

    void validate() const
    {
        if (!(l_u1_m > 0.0) || !(l_u1_m < l_sd_m))
            throw validation_error("l_u1_m", "circle diameter must satisfy 0 < L_u1 < L_sd");
        if (!(l_sc_m > 0.0) || !(l_sc_m < l_sd_m))
            throw validation_error("l_sc_m", "center placement must satisfy 0 < L_sc < L_sd");
        if (!(h_u_m > 0.0))
            throw validation_error("h_u_m", "relay altitude must be > 0");
        const bool psi_ok = psi_s_min_rad > 0.0 && psi_s_min_rad < pi / 2.0 &&
                            psi_d_min_rad > 0.0 && psi_d_min_rad < pi / 2.0;
        if (!psi_ok)
            throw validation_error("psi_min", "minimum elevations must lie in (0, pi/2)");
    }
};

// One sampled point of the flight path with everything downstream consumers
// need: position, slant link lengths and elevation angles.
struct PathPoint
{
    double theta_r1_rad;
    double x_u_m;
    double y_u_m;
    double l_s_m;
    double l_d_m;
    double psi_s_rad;
    double psi_d_rad;
};

// Horizontal relay position on the circle (origin at the circle center).
inline std::pair<double, double> uav_position(double theta_r1_rad, double l_u1_m)
{
    if (theta_r1_rad < 0.0 || theta_r1_rad > pi)
        throw domain_error("path angle must lie in [0, pi]");
    return {0.5 * l_u1_m * std::cos(theta_r1_rad), 0.5 * l_u1_m * std::sin(theta_r1_rad)};
}

// Slant link lengths from both terminals to the relay at path angle theta:
//   L_s = sqrt((L_sc + (L_u1/2) cos t)^2 + (L_u1^2/4) sin^2 t + H_u^2)
// and symmetrically for L_d with L_dc - (L_u1/2) cos t.
inline std::pair<double, double> link_lengths(double theta_r1_rad, const PathGeometry &g)
{
    const double r = 0.5 * g.l_u1_m;
    const double c = std::cos(theta_r1_rad);
    const double s2 = r * r * std::sin(theta_r1_rad) * std::sin(theta_r1_rad);
    const double xs = g.l_sc_m + r * c;
    const double xd = g.l_dc_m() - r * c;
    return {std::sqrt(xs * xs + s2 + g.h_u_m * g.h_u_m),
            std::sqrt(xd * xd + s2 + g.h_u_m * g.h_u_m)};
}

// Elevation angle seen from a ground terminal: asin(H_u / L) for a slant
// length L to a relay at altitude H_u.
inline double elevation_angle(double l_m, double h_u_m)
{
    if (!(h_u_m > 0.0) || l_m < h_u_m)
        throw domain_error("elevation angle requires L >= H_u > 0");
    return std::asin(h_u_m / l_m);
}

// Minimum relay altitude such that the elevation to the farthest path point
// of each link stays above that link's minimum:
//   H_u >= (L_sc + L_u1/2) sin(psi_s_min)  and
//   H_u >= (L_dc + L_u1/2) sin(psi_d_min).
// Equality holds in at least one of the two at the returned value.
inline double min_height(const PathGeometry &g)
{
    const double far_s = g.l_sc_m + 0.5 * g.l_u1_m;
    const double far_d = g.l_dc_m() + 0.5 * g.l_u1_m;
    if (!(far_s > 0.0) || !(far_d > 0.0))
        throw domain_error("minimum height requires positive horizontal reach on both links");
    return std::max(far_s * std::sin(g.psi_s_min_rad), far_d * std::sin(g.psi_d_min_rad));
}

// M uniformly spaced path points on [0, pi] with positions, link lengths and
// elevations filled in.
inline std::vector<PathPoint> path_profile(const PathGeometry &g, int m_points)
{
    if (m_points < 2)
        throw domain_error("path profile needs at least 2 points");

    std::vector<PathPoint> pts;
    pts.reserve(static_cast<std::size_t>(m_points));
    for (int j = 0; j < m_points; ++j)
    {
        const double theta = pi * static_cast<double>(j) / static_cast<double>(m_points - 1);
        const auto [x, y] = uav_position(theta, g.l_u1_m);
        const auto [ls, ld] = link_lengths(theta, g);
        pts.push_back({theta, x, y, ls, ld, elevation_angle(ls, g.h_u_m),
                       elevation_angle(ld, g.h_u_m)});
    }
    return pts;
}

} // namespace nfplink

#endif // NFPLINK_GEOMETRY_HPP

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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nfplink/geometry.hpp>

using namespace nfplink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
// Symmetric benchmark placement used by the frozen oracles: both terminals
// 9.5 km from the circle center, 3.5 km circle, relay at 2 km altitude.
PathGeometry symmetric_geom()
{
    PathGeometry g;
    g.l_sd_m = 19000.0;
    g.l_sc_m = 9500.0;
    g.l_u1_m = 3500.0;
    g.h_u_m = 2000.0;
    return g;
}
} // namespace

TEST_CASE("uav position on the semicircle", "[geometry]")
{
    const auto [x0, y0] = uav_position(0.0, 3500.0);
    CHECK_THAT(x0, WithinAbs(1750.0, 1e-12));
    CHECK_THAT(y0, WithinAbs(0.0, 1e-12));

    const auto [xp, yp] = uav_position(pi, 3500.0);
    CHECK_THAT(xp, WithinAbs(-1750.0, 1e-9));
    CHECK_THAT(yp, WithinAbs(0.0, 1e-9));

    const auto [xh, yh] = uav_position(pi / 2.0, 3500.0);
    CHECK_THAT(xh, WithinAbs(0.0, 1e-9));
    CHECK_THAT(yh, WithinAbs(1750.0, 1e-12));

    CHECK_THROWS_AS(uav_position(-0.1, 3500.0), domain_error);
    CHECK_THROWS_AS(uav_position(pi + 0.1, 3500.0), domain_error);
}

TEST_CASE("link lengths: frozen oracle and extremes", "[geometry]")
{
    const PathGeometry g = symmetric_geom();

    // Frozen: L_s(pi/2) = sqrt(9500^2 + 1750^2 + 2000^2).
    const auto [ls_mid, ld_mid] = link_lengths(pi / 2.0, g);
    CHECK_THAT(ls_mid, WithinRel(9864.70982847443, 1e-12));
    CHECK_THAT(ld_mid, WithinRel(9864.70982847443, 1e-12)); // symmetric placement

    // theta = 0: UAV at the point nearest the destination.
    const auto [ls0, ld0] = link_lengths(0.0, g);
    CHECK_THAT(ls0, WithinRel(std::hypot(9500.0 + 1750.0, 2000.0), 1e-12));
    CHECK_THAT(ld0, WithinRel(std::hypot(9500.0 - 1750.0, 2000.0), 1e-12));

    // theta = pi mirrors theta = 0 under the symmetric placement.
    const auto [lsp, ldp] = link_lengths(pi, g);
    CHECK_THAT(lsp, WithinRel(ld0, 1e-12));
    CHECK_THAT(ldp, WithinRel(ls0, 1e-12));

    // L_s is monotone decreasing in theta on [0, pi] (source side).
    double prev = ls0;
    for (int i = 1; i <= 32; ++i)
    {
        const auto [ls, ld] = link_lengths(pi * i / 32.0, g);
        (void)ld;
        CHECK(ls < prev);
        prev = ls;
    }
}

TEST_CASE("elevation angle", "[geometry]")
{
    CHECK_THAT(elevation_angle(9864.70982847443, 2000.0), WithinRel(0.2041581979574331, 1e-12));
    CHECK_THAT(elevation_angle(2000.0, 2000.0), WithinAbs(pi / 2.0, 1e-12)); // straight up
    CHECK_THROWS_AS(elevation_angle(1500.0, 2000.0), domain_error); // L < H_u
    CHECK_THROWS_AS(elevation_angle(1000.0, 0.0), domain_error);
}

TEST_CASE("minimum relay height", "[geometry]")
{
    // Frozen: max((L_sc + r) sin(10 deg), (L_dc + r) sin(15 deg)) at the
    // symmetric placement -> destination side dominates.
    const PathGeometry g = symmetric_geom();
    CHECK_THAT(min_height(g), WithinRel(2911.7142574033583, 1e-12));

    // Moving the center towards the destination relaxes the binding side.
    PathGeometry closer = g;
    closer.l_sc_m = 12000.0; // l_dc = 7000
    CHECK(min_height(closer) < min_height(g));
}

TEST_CASE("path profile is a consistent sweep", "[geometry]")
{
    const PathGeometry g = symmetric_geom();
    const auto pts = path_profile(g, 21);
    REQUIRE(pts.size() == 21);
    CHECK_THAT(pts.front().theta_r1_rad, WithinAbs(0.0, 0.0));
    CHECK_THAT(pts.back().theta_r1_rad, WithinAbs(pi, 1e-15));

    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        const auto &p = pts[i];
        // Fields agree with the standalone operations.
        const auto [ls, ld] = link_lengths(p.theta_r1_rad, g);
        CHECK_THAT(p.l_s_m, WithinRel(ls, 1e-14));
        CHECK_THAT(p.l_d_m, WithinRel(ld, 1e-14));
        CHECK_THAT(p.psi_s_rad, WithinRel(elevation_angle(ls, g.h_u_m), 1e-14));
        CHECK_THAT(p.psi_d_rad, WithinRel(elevation_angle(ld, g.h_u_m), 1e-14));
        // On-circle invariant and the L >= H_u bound.
        CHECK_THAT(std::hypot(p.x_u_m, p.y_u_m), WithinRel(g.l_u1_m / 2.0, 1e-12));
        CHECK(p.l_s_m >= g.h_u_m);
        CHECK(p.l_d_m >= g.h_u_m);
        if (i > 0)
            CHECK(p.theta_r1_rad > pts[i - 1].theta_r1_rad);
    }

    CHECK_THROWS_AS(path_profile(g, 1), domain_error);
}

TEST_CASE("geometry validation", "[geometry]")
{
    PathGeometry g = symmetric_geom();
    CHECK_NOTHROW(g.validate());
    CHECK_THAT(g.l_dc_m(), WithinAbs(9500.0, 1e-12));

    PathGeometry bad = g;
    bad.l_u1_m = 20000.0; // circle wider than the terminal separation
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = g;
    bad.l_sc_m = 19000.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = g;
    bad.h_u_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = g;
    bad.psi_s_min_rad = 0.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

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

#ifndef NFPLINK_ANTENNA_HPP
#define NFPLINK_ANTENNA_HPP

#include <cmath>

#include "errors.hpp"
#include "units.hpp"

namespace nfplink
{

// Uniform rectangular array model: a standard parabolic-rolloff single
// element pattern multiplied by the separable Dirichlet-kernel array factor
// of an N_x x N_y grid, with the array gain G_0 = N_x * N_y. Misalignment
// enters as a random (theta_x, theta_y) tilt of the boresight per axis.

// Single-element pattern constants (dB). Defaults are the standard sectored
// element: 8 dBi peak, 65 degree half-power widths on both principal cuts,
// 30 dB side/back floor. All five are configuration-overridable.
struct ElementPattern
{
    double g_max_dbi = 8.0;
    double theta_3db_deg = 65.0; // vertical-cut rolloff width
    double phi_3db_deg = 65.0;   // horizontal-cut rolloff width
    double sla_db = 30.0;        // vertical-cut attenuation limit
    double a_m_db = 30.0;        // overall front-to-back floor
};

// Geometry of one array: element counts, spacings and progressive phases
// per axis, plus its element pattern.
struct ArrayConfig
{
    int n_x = 1;
    int n_y = 1;
    double d_x_m = 0.0;    // element spacing along x (m)
    double d_y_m = 0.0;    // element spacing along y (m)
    double beta_x_rad = 0.0; // progressive phase along x
    double beta_y_rad = 0.0; // progressive phase along y
    ElementPattern element;

    void validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw validation_error("n_x/n_y", "element counts must be >= 1");
        if (!(d_x_m > 0.0) || !(d_y_m > 0.0))
            throw validation_error("d_x_m/d_y_m", "element spacings must be > 0");
    }
};

// Per-axis Gaussian misalignment statistics of one array's boresight (rad).
// sigma = 0 is the degenerate deterministic case and is allowed.
struct MisalignmentStats
{
    double mu_x_rad = 0.0;
    double mu_y_rad = 0.0;
    double sigma_x_rad = 0.0;
    double sigma_y_rad = 0.0;

    void validate() const
    {
        if (sigma_x_rad < 0.0 || sigma_y_rad < 0.0)
            throw validation_error("sigma", "misalignment std deviations must be >= 0");
    }
};

// One realization of an array's pointing offset: the per-axis tilts and the
// equivalent polar decomposition
//   theta_xy = atan(sqrt(tan^2 theta_x + tan^2 theta_y)),
//   phi      = atan2(tan theta_y, tan theta_x).
struct PointingSample
{
    double theta_x_rad;
    double theta_y_rad;
    double theta_xy_rad;
    double phi_rad;
};

inline PointingSample pointing_from_axes(double theta_x_rad, double theta_y_rad)
{
    if (!(std::fabs(theta_x_rad) < pi / 2.0) || !(std::fabs(theta_y_rad) < pi / 2.0))
        throw domain_error("per-axis pointing offsets must satisfy |theta| < pi/2");
    const double tx = std::tan(theta_x_rad);
    const double ty = std::tan(theta_y_rad);
    return {theta_x_rad, theta_y_rad, std::atan(std::sqrt(tx * tx + ty * ty)),
            std::atan2(ty, tx)};
}

// Single-element power gain (linear) at a pointing offset. The offset's
// horizontal/vertical components are recovered from (theta_xy, phi); phi = 0
// maps to the horizontal cut. Pattern:
//   A_h = min(12 (theta_h / phi_3db)^2, A_m),
//   A_v = min(12 (theta_v / theta_3db)^2, SLA),
//   G_dB = G_max - min(A_h + A_v, A_m).
inline double element_gain(const PointingSample &p, const ElementPattern &e = {})
{
    const double t = std::tan(p.theta_xy_rad);
    const double th_h = std::atan(t * std::cos(p.phi_rad)); // equals theta_x
    const double th_v = std::atan(t * std::sin(p.phi_rad)); // equals theta_y

    const double rh = rad2deg(th_h) / e.phi_3db_deg;
    const double rv = rad2deg(th_v) / e.theta_3db_deg;
    const double a_h = std::min(12.0 * rh * rh, e.a_m_db);
    const double a_v = std::min(12.0 * rv * rv, e.sla_db);
    return db_to_linear(e.g_max_dbi - std::min(a_h + a_v, e.a_m_db));
}

// Normalized per-axis array factor sin(N u / 2) / (N sin(u / 2)) with
// u = k d proj + beta, where proj is the boresight-offset projection on the
// axis. The removable 0/0 points (u = 0 mod 2pi) are evaluated by the exact
// limit cos(N u / 2) / cos(u / 2) = +-1, so boresight returns exactly 1.
inline double array_factor_axis(int n, double d_m, double k_rad_per_m, double beta_rad,
                                double proj)
{
    if (n < 1)
        throw domain_error("array factor needs N >= 1");
    if (n == 1)
        return 1.0;

    const double u = k_rad_per_m * d_m * proj + beta_rad;
    const double den = std::sin(0.5 * u);
    if (std::fabs(den) < 1e-12)
        return std::cos(0.5 * static_cast<double>(n) * u) / std::cos(0.5 * u);
    return std::sin(0.5 * static_cast<double>(n) * u) / (static_cast<double>(n) * den);
}

// Composite power gain of one array at one pointing realization:
//   N_x N_y * G_e(offset) * AF_x^2 * AF_y^2,
// with the x-axis kernel argument sin(theta_xy) cos(phi) and the y-axis
// argument sin(theta_xy) sin(phi).
inline double composite_gain(const ArrayConfig &a, double k_rad_per_m, const PointingSample &p)
{
    const double s = std::sin(p.theta_xy_rad);
    const double af_x =
        array_factor_axis(a.n_x, a.d_x_m, k_rad_per_m, a.beta_x_rad, s * std::cos(p.phi_rad));
    const double af_y =
        array_factor_axis(a.n_y, a.d_y_m, k_rad_per_m, a.beta_y_rad, s * std::sin(p.phi_rad));
    return static_cast<double>(a.n_x) * static_cast<double>(a.n_y) * element_gain(p, a.element) *
           af_x * af_x * af_y * af_y;
}

} // namespace nfplink

#endif // NFPLINK_ANTENNA_HPP

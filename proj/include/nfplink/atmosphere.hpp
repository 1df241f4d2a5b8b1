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

#ifndef NFPLINK_ATMOSPHERE_HPP
#define NFPLINK_ATMOSPHERE_HPP

#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"
#include "units.hpp"

namespace nfplink
{

// Clear-air absorption and total path loss for horizontal and slant links,
// using the simplified ITU-style dry-air / water-vapor fits at 20 degC sea
// level, an exponential density profile in altitude, and free-space
// spreading. Valid below 350 GHz.

// Exponential-profile and water-vapor parameters of the absorption model.
// Heights in km; the terminal heights are above sea level and default to 0.
struct AtmosphereParams
{
    double rho0_g_m3 = 7.5;       // water-vapor density at sea level, g/m^3
    double h_scale_km = 1.5;      // e-folding height of absorber density, km
    double ground_height_s_km = 0.0; // source-side terminal height, km
    double ground_height_d_km = 0.0; // destination-side terminal height, km

    void validate() const
    {
        if (!(rho0_g_m3 > 0.0))
            throw validation_error("rho0_g_m3", "water-vapor density must be > 0");
        if (!(h_scale_km > 0.0))
            throw validation_error("h_scale_km", "scale height must be > 0");
        if (ground_height_s_km < 0.0 || ground_height_d_km < 0.0)
            throw validation_error("ground_height_km", "terminal heights must be >= 0");
    }
};

// Carrier frequency with derived wavelength and wavenumber. The fit range
// check lives here so every consumer inherits it.
struct CarrierPlan
{
    double f_c_ghz = 70.0;

    double lambda_m() const { return wavelength_m(f_c_ghz); }
    double k_rad_per_m() const { return wavenumber_rad_per_m(f_c_ghz); }

    void validate() const
    {
        if (!(f_c_ghz > 0.0) || !(f_c_ghz < 350.0))
            throw validation_error("f_c_ghz",
                                   "carrier frequency must lie in (0, 350) GHz, the validity "
                                   "range of the simplified absorption model");
    }
};

namespace detail
{
inline void check_freq_range(double f_ghz)
{
    if (!(f_ghz > 0.0) || !(f_ghz < 350.0))
        throw domain_error("frequency " + std::to_string(f_ghz) +
                           " GHz outside the (0, 350) GHz model range");
}
} // namespace detail

// Dry-air (oxygen) specific attenuation at sea level, dB/km.
//
// Three-branch piecewise fit. The published middle branch is a linear ramp
// anchored at the 57 GHz value; taken literally up to 63 GHz it does not
// meet the upper branch (a ~4.5 dB/km jump). Branch continuity at both edges
// is a hard requirement here, so the ramp is kept on (57, 60] - preserving
// the well-known ~15 dB/km oxygen-complex plateau at 60 GHz - and (60, 63)
// bridges linearly to the upper-branch value at 63 GHz.
inline double oxygen_attn_sea_level(double f_ghz)
{
    detail::check_freq_range(f_ghz);

    const auto low_branch = [](double f) {
        return 0.001 * f * f * (6.09 / (f * f + 0.227) + 4.81 / ((f - 57.0) * (f - 57.0) + 1.5));
    };
    const auto high_branch = [](double f) {
        return 0.001 * f * f *
               (4.13 / ((f - 63.0) * (f - 63.0) + 1.1) +
                0.19 / ((f - 118.7) * (f - 118.7) + 2.0));
    };

    if (f_ghz <= 57.0)
        return low_branch(f_ghz);
    if (f_ghz >= 63.0)
        return high_branch(f_ghz);

    const double h57 = low_branch(57.0);
    if (f_ghz <= 60.0)
        return h57 + 1.5 * (f_ghz - 57.0);

    const double at60 = h57 + 4.5;
    const double at63 = high_branch(63.0);
    return at60 + (at63 - at60) * (f_ghz - 60.0) / 3.0;
}

// Water-vapor specific attenuation at sea level, dB/km; linear in the vapor
// density with resonance terms at 22.2, 183.3 and 325.4 GHz.
inline double water_attn_sea_level(double f_ghz, double rho0_g_m3)
{
    detail::check_freq_range(f_ghz);
    if (rho0_g_m3 < 0.0)
        throw domain_error("water-vapor density must be >= 0");

    const double f2 = f_ghz * f_ghz;
    return 0.0001 * f2 * rho0_g_m3 *
           (0.050 + 3.6 / ((f_ghz - 22.2) * (f_ghz - 22.2) + 8.5) +
            10.6 / ((f_ghz - 183.3) * (f_ghz - 183.3) + 9.0) +
            8.9 / ((f_ghz - 325.4) * (f_ghz - 325.4) + 26.3));
}

// Combined sea-level specific attenuation, dB/km.
inline double sea_level_specific_attn(double f_ghz, const AtmosphereParams &atm)
{
    return oxygen_attn_sea_level(f_ghz) + water_attn_sea_level(f_ghz, atm.rho0_g_m3);
}

// Specific attenuation at altitude H (km): sea-level value scaled by the
// exponential absorber-density profile.
inline double specific_attn_at_height(double f_ghz, double h_km, const AtmosphereParams &atm)
{
    if (h_km < 0.0)
        throw domain_error("altitude must be >= 0 km");
    return sea_level_specific_attn(f_ghz, atm) * std::exp(-h_km / atm.h_scale_km);
}

// Total attenuation (dB, not dB/km) of a slant segment climbing from H1 to
// H2 (km above sea level) at constant elevation psi: the closed form of the
// line integral of the exponential profile,
//   gamma0 * h_scale / sin(psi) * (exp(-H1/h_scale) - exp(-H2/h_scale)).
inline double slant_attn_total(double f_ghz, double h1_km, double h2_km, double psi_rad,
                               const AtmosphereParams &atm)
{
    if (h1_km < 0.0 || !(h1_km < h2_km))
        throw domain_error("slant path requires 0 <= H1 < H2");
    if (!(psi_rad > 0.0) || psi_rad > pi / 2.0)
        throw domain_error("slant path requires elevation in (0, pi/2]; use the horizontal "
                           "dB/km form for psi = 0");

    const double g0 = sea_level_specific_attn(f_ghz, atm);
    return g0 * atm.h_scale_km / std::sin(psi_rad) *
           (std::exp(-h1_km / atm.h_scale_km) - std::exp(-h2_km / atm.h_scale_km));
}

// Slant geometry descriptor for total_path_loss_db.
struct SlantGeometry
{
    double h1_km;
    double h2_km;
    double psi_rad;
};

// Total path loss in dB: free-space spreading 20*log10(4*pi*L/lambda) plus
// the atmospheric term - the slant-segment total when a slant geometry is
// given, otherwise the horizontal sea-level dB/km rate times the length.
inline double total_path_loss_db(double f_ghz, double length_m,
                                 const std::optional<SlantGeometry> &slant,
                                 const AtmosphereParams &atm)
{
    if (!(length_m > 0.0))
        throw domain_error("path length must be > 0 m");

    const double fspl = 20.0 * std::log10(4.0 * pi * length_m / wavelength_m(f_ghz));
    if (slant)
        return fspl + slant_attn_total(f_ghz, slant->h1_km, slant->h2_km, slant->psi_rad, atm);
    return fspl + sea_level_specific_attn(f_ghz, atm) * (length_m / 1000.0);
}

} // namespace nfplink

#endif // NFPLINK_ATMOSPHERE_HPP

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

#ifndef NFPLINK_UNITS_HPP
#define NFPLINK_UNITS_HPP

#include <cmath>

namespace nfplink
{

// Physical and mathematical constants. All internal computation is done in
// SI units (m, W, rad); dB and degree conversions happen once at boundaries.

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0; // m/s

constexpr double deg2rad(double deg) { return deg * (pi / 180.0); }
constexpr double rad2deg(double rad) { return rad * (180.0 / pi); }

// Power-quantity dB conversions (factor 10, base 10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Carrier helpers; frequency argument in GHz throughout the public API to
// match the configuration file convention.
inline double wavelength_m(double f_ghz) { return speed_of_light / (f_ghz * 1e9); }
inline double wavenumber_rad_per_m(double f_ghz) { return 2.0 * pi / wavelength_m(f_ghz); }

} // namespace nfplink

#endif // NFPLINK_UNITS_HPP

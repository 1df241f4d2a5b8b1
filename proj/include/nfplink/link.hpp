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

#ifndef NFPLINK_LINK_HPP
#define NFPLINK_LINK_HPP

#include <algorithm>
#include <cmath>

#include "antenna.hpp"
#include "atmosphere.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace nfplink
{

// Per-hop SNR for one realization of all misalignment angles, the capacity
// map, and the decode-and-forward end-to-end combination (minimum hop SNR).

enum class CapacityUnit
{
    bits_per_s_hz, // log base 2 (default)
    nats_per_s_hz  // natural log, for cross-checks
};

// Everything needed to evaluate one hop: power budget, the two arrays with
// their misalignment statistics, carrier and atmosphere.
struct HopConfig
{
    double tx_power_w = 1.0;
    double noise_power_w = 3.9810717055349695e-11; // -74 dBm default
    ArrayConfig ground_array;
    MisalignmentStats ground_stats;
    ArrayConfig uav_array;
    MisalignmentStats uav_stats;
    CarrierPlan carrier;
    AtmosphereParams atmosphere;
    double ground_height_km = 0.0; // this hop's terminal height above sea level

    void validate() const
    {
        if (!(tx_power_w > 0.0))
            throw validation_error("tx_power_w", "transmit power must be > 0");
        if (!(noise_power_w > 0.0))
            throw validation_error("noise_power_w", "noise power must be > 0");
        ground_array.validate();
        ground_stats.validate();
        uav_array.validate();
        uav_stats.validate();
        carrier.validate();
        atmosphere.validate();
    }
};

struct SnrRealization
{
    double gamma; // linear SNR, >= 0
    PointingSample ground_pointing;
    PointingSample uav_pointing;
};

// Linear channel power gain of the hop at slant length L and elevation psi:
// the reciprocal of the total path loss. The climb of the slant segment is
// L sin(psi) above the hop's terminal height.
inline double hop_channel_gain(const HopConfig &hop, double l_m, double psi_rad)
{
    const double h1 = hop.ground_height_km;
    const double h2 = h1 + l_m * std::sin(psi_rad) / 1000.0;
    const double loss_db = total_path_loss_db(hop.carrier.f_c_ghz, l_m,
                                              SlantGeometry{h1, h2, psi_rad}, hop.atmosphere);
    return db_to_linear(-loss_db);
}

// Instantaneous hop SNR for one joint pointing realization:
//   gamma = P_t / sigma_n^2 * h_L(L, psi) * G_ground(pointing) * G_uav(pointing).
inline SnrRealization hop_snr(const HopConfig &hop, double l_m, double psi_rad,
                              const PointingSample &ground_p, const PointingSample &uav_p)
{
    if (!(l_m > 0.0))
        throw domain_error("hop length must be > 0");
    const double k = hop.carrier.k_rad_per_m();
    const double gamma = hop.tx_power_w / hop.noise_power_w * hop_channel_gain(hop, l_m, psi_rad) *
                         composite_gain(hop.ground_array, k, ground_p) *
                         composite_gain(hop.uav_array, k, uav_p);
    return {gamma, ground_p, uav_p};
}

// Spectral efficiency of one SNR realization.
inline double instantaneous_capacity(double gamma, CapacityUnit unit = CapacityUnit::bits_per_s_hz)
{
    if (gamma < 0.0)
        throw domain_error("SNR must be >= 0");
    const double nats = std::log1p(gamma);
    return unit == CapacityUnit::bits_per_s_hz ? nats / std::log(2.0) : nats;
}

// Decode-and-forward end-to-end SNR: the bottleneck hop.
inline double e2e_snr(double gamma_cu, double gamma_ur)
{
    return std::min(gamma_cu, gamma_ur);
}

} // namespace nfplink

#endif // NFPLINK_LINK_HPP

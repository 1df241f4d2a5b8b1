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

#ifndef NFPLINK_SCENARIO_HPP
#define NFPLINK_SCENARIO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../../vendor/json.hpp"
#include "optimizer.hpp"

namespace nfplink
{

// Scenario configuration as read from / written to a JSON file. Values are
// stored in the units the file uses (degrees for angles) so that
// save -> load round-trips bit-exactly; conversion to SI/radians happens
// when the runtime structs are built. Every angle/length key carries its
// unit in its name to keep degree/radian mix-ups impossible.

struct CarrierGroup
{
    double f_c_ghz = 70.0;
    bool operator==(const CarrierGroup &) const = default;
};

struct AtmosphereGroup
{
    double rho0_g_m3 = 7.5;
    double h_scale_km = 1.5;
    double ground_height_s_km = 0.0;
    double ground_height_d_km = 0.0;
    bool operator==(const AtmosphereGroup &) const = default;
};

struct GeometryGroup
{
    double l_sd_m = 19000.0;
    double l_u1_m = 3500.0;
    double l_sc_m = 11600.0;
    double h_u_m = 3000.0;
    double psi_s_min_deg = 10.0;
    double psi_d_min_deg = 15.0;
    bool operator==(const GeometryGroup &) const = default;
};

struct PowerGroup
{
    double tx_su_w = 1.0; // source terminal transmit power
    double tx_du_w = 0.2; // relay transmit power towards the destination
    bool operator==(const PowerGroup &) const = default;
};

struct NoiseGroup
{
    double psd_dbm_hz = -174.0;
    double bandwidth_hz = 1.0e9;
    double figure_db = 10.0;
    std::optional<double> power_w; // overrides the psd/bandwidth/figure product
    bool operator==(const NoiseGroup &) const = default;
};

struct ThresholdGroup
{
    double gamma_th_db = 0.0;
    double p_out_tr = 1e-3;
    bool operator==(const ThresholdGroup &) const = default;
};

struct ElementGroup
{
    double g_max_dbi = 8.0;
    double theta_3db_deg = 65.0;
    double phi_3db_deg = 65.0;
    double sla_db = 30.0;
    double a_m_db = 30.0;
    bool operator==(const ElementGroup &) const = default;
};

struct ArraysGroup
{
    int n_sx = 18, n_sy = 18; // source terminal array
    int n_dx = 18, n_dy = 18; // destination terminal array
    int n_usx = 12, n_usy = 18; // relay array facing the source
    int n_udx = 12, n_udy = 18; // relay array facing the destination
    double spacing_over_lambda = 0.5;
    double beta_x_deg = 0.0;
    double beta_y_deg = 0.0;
    ElementGroup element;
    bool operator==(const ArraysGroup &) const = default;
};

struct MisalignmentGroup
{
    double mu_qw_deg = 0.3; // ground arrays, both axes
    double sigma_qw_deg = 0.5;
    double mu_uqx_deg = 1.7; // relay arrays
    double mu_uqy_deg = 1.0;
    double sigma_uqx_deg = 1.5;
    double sigma_uqy_deg = 0.5;
    bool operator==(const MisalignmentGroup &) const = default;
};

struct MonteCarloGroup
{
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
    int path_points = 181;
    std::string truncation = "redraw"; // or "strict"
    bool operator==(const MonteCarloGroup &) const = default;
};

struct SweepGroup
{
    double l_sc_min_m = 5600.0;
    double l_sc_max_m = 17600.0;
    int l_sc_points = 31;
    double f_min_ghz = 1.0;
    double f_max_ghz = 100.0;
    double f_step_ghz = 1.0;
    bool operator==(const SweepGroup &) const = default;
};

struct OptimizeGroup
{
    std::vector<int> n_sx{12, 14, 16, 18}, n_sy{12, 14, 16, 18};
    std::vector<int> n_dx{12, 14, 16, 18}, n_dy{12, 14, 16, 18};
    std::vector<int> n_usx{6, 8, 10, 12, 14, 16, 18}, n_usy{6, 8, 10, 12, 14, 16, 18};
    std::vector<int> n_udx{6, 8, 10, 12, 14, 16, 18}, n_udy{6, 8, 10, 12, 14, 16, 18};
    std::vector<double> h_u_m{3000.0};
    std::vector<double> l_sc_m{9200.0,  9600.0,  10000.0, 10400.0, 10800.0, 11200.0,
                               11600.0, 12000.0, 12400.0, 12800.0, 13200.0, 13600.0,
                               14000.0, 14400.0, 14800.0, 15200.0};
    bool tie_uav_arrays = true;
    bool tie_ground_arrays = true;
    bool prune = true;
    std::uint64_t samples = 100000;
    int path_points = 61;
    bool operator==(const OptimizeGroup &) const = default;
};

struct ScenarioConfig
{
    CarrierGroup carrier;
    AtmosphereGroup atmosphere;
    GeometryGroup geometry;
    PowerGroup power;
    NoiseGroup noise;
    ThresholdGroup threshold;
    ArraysGroup arrays;
    MisalignmentGroup misalignment;
    MonteCarloGroup montecarlo;
    SweepGroup sweep;
    OptimizeGroup optimize;
    bool operator==(const ScenarioConfig &) const = default;

    double noise_power_w() const
    {
        if (noise.power_w)
            return *noise.power_w;
        return dbm_to_watt(noise.psd_dbm_hz + 10.0 * std::log10(noise.bandwidth_hz) +
                           noise.figure_db);
    }

    CarrierPlan carrier_plan() const { return CarrierPlan{carrier.f_c_ghz}; }

    AtmosphereParams atmosphere_params() const
    {
        AtmosphereParams a;
        a.rho0_g_m3 = atmosphere.rho0_g_m3;
        a.h_scale_km = atmosphere.h_scale_km;
        a.ground_height_s_km = atmosphere.ground_height_s_km;
        a.ground_height_d_km = atmosphere.ground_height_d_km;
        return a;
    }

    PathGeometry path_geometry() const
    {
        PathGeometry g;
        g.l_sd_m = geometry.l_sd_m;
        g.l_u1_m = geometry.l_u1_m;
        g.l_sc_m = geometry.l_sc_m;
        g.h_u_m = geometry.h_u_m;
        g.psi_s_min_rad = deg2rad(geometry.psi_s_min_deg);
        g.psi_d_min_rad = deg2rad(geometry.psi_d_min_deg);
        return g;
    }

    ArrayConfig make_array(int n_x, int n_y) const
    {
        ArrayConfig a;
        a.n_x = n_x;
        a.n_y = n_y;
        a.d_x_m = arrays.spacing_over_lambda * carrier_plan().lambda_m();
        a.d_y_m = a.d_x_m;
        a.beta_x_rad = deg2rad(arrays.beta_x_deg);
        a.beta_y_rad = deg2rad(arrays.beta_y_deg);
        a.element.g_max_dbi = arrays.element.g_max_dbi;
        a.element.theta_3db_deg = arrays.element.theta_3db_deg;
        a.element.phi_3db_deg = arrays.element.phi_3db_deg;
        a.element.sla_db = arrays.element.sla_db;
        a.element.a_m_db = arrays.element.a_m_db;
        return a;
    }

    MisalignmentStats ground_stats() const
    {
        MisalignmentStats s;
        s.mu_x_rad = deg2rad(misalignment.mu_qw_deg);
        s.mu_y_rad = deg2rad(misalignment.mu_qw_deg);
        s.sigma_x_rad = deg2rad(misalignment.sigma_qw_deg);
        s.sigma_y_rad = deg2rad(misalignment.sigma_qw_deg);
        return s;
    }

    MisalignmentStats uav_stats() const
    {
        MisalignmentStats s;
        s.mu_x_rad = deg2rad(misalignment.mu_uqx_deg);
        s.mu_y_rad = deg2rad(misalignment.mu_uqy_deg);
        s.sigma_x_rad = deg2rad(misalignment.sigma_uqx_deg);
        s.sigma_y_rad = deg2rad(misalignment.sigma_uqy_deg);
        return s;
    }

    RelayScenario scenario() const
    {
        RelayScenario sc;
        sc.geometry = path_geometry();
        sc.gamma_th = db_to_linear(threshold.gamma_th_db);
        sc.p_out_tr = threshold.p_out_tr;

        sc.hop_su.tx_power_w = power.tx_su_w;
        sc.hop_su.noise_power_w = noise_power_w();
        sc.hop_su.ground_array = make_array(arrays.n_sx, arrays.n_sy);
        sc.hop_su.ground_stats = ground_stats();
        sc.hop_su.uav_array = make_array(arrays.n_usx, arrays.n_usy);
        sc.hop_su.uav_stats = uav_stats();
        sc.hop_su.carrier = carrier_plan();
        sc.hop_su.atmosphere = atmosphere_params();
        sc.hop_su.ground_height_km = atmosphere.ground_height_s_km;

        sc.hop_du.tx_power_w = power.tx_du_w;
        sc.hop_du.noise_power_w = noise_power_w();
        sc.hop_du.ground_array = make_array(arrays.n_dx, arrays.n_dy);
        sc.hop_du.ground_stats = ground_stats();
        sc.hop_du.uav_array = make_array(arrays.n_udx, arrays.n_udy);
        sc.hop_du.uav_stats = uav_stats();
        sc.hop_du.carrier = carrier_plan();
        sc.hop_du.atmosphere = atmosphere_params();
        sc.hop_du.ground_height_km = atmosphere.ground_height_d_km;
        return sc;
    }

    DesignSpace design_space() const
    {
        DesignSpace d;
        d.n_sx = optimize.n_sx;
        d.n_sy = optimize.n_sy;
        d.n_dx = optimize.n_dx;
        d.n_dy = optimize.n_dy;
        d.n_usx = optimize.n_usx;
        d.n_usy = optimize.n_usy;
        d.n_udx = optimize.n_udx;
        d.n_udy = optimize.n_udy;
        d.h_u_m = optimize.h_u_m;
        d.l_sc_m = optimize.l_sc_m;
        d.tie_uav_arrays = optimize.tie_uav_arrays;
        d.tie_ground_arrays = optimize.tie_ground_arrays;
        d.prune_uav_y_ge_x = optimize.prune;
        return d;
    }

    OptimizeBudget optimize_budget() const
    {
        OptimizeBudget b;
        b.n_samples = optimize.samples;
        b.path_points = optimize.path_points;
        return b;
    }

    McOptions mc_options() const
    {
        McOptions o;
        o.threads = montecarlo.threads;
        o.truncation =
            montecarlo.truncation == "strict" ? TruncationPolicy::strict_zero : TruncationPolicy::redraw;
        o.unit = CapacityUnit::bits_per_s_hz;
        return o;
    }

    // Full semantic validation: types were checked at parse time, ranges and
    // cross-field invariants are checked here (and by the runtime structs).
    void validate() const
    {
        if (!(noise.bandwidth_hz > 0.0))
            throw validation_error("noise.bandwidth_hz", "bandwidth must be > 0 (Hz)");
        if (noise.power_w && !(*noise.power_w > 0.0))
            throw validation_error("noise.power_w", "noise power must be > 0 (W)");
        if (!(threshold.p_out_tr > 0.0) || !(threshold.p_out_tr <= 1.0))
            throw validation_error("threshold.p_out_tr", "outage target must lie in (0, 1]");
        if (misalignment.sigma_qw_deg < 0.0 || misalignment.sigma_uqx_deg < 0.0 ||
            misalignment.sigma_uqy_deg < 0.0)
            throw validation_error("misalignment", "standard deviations must be >= 0 (deg)");
        if (!(arrays.spacing_over_lambda > 0.0))
            throw validation_error("arrays.spacing_over_lambda", "element spacing must be > 0");
        if (montecarlo.samples < 100)
            throw validation_error("montecarlo.samples", "need at least 100 samples");
        if (montecarlo.threads < 0)
            throw validation_error("montecarlo.threads", "thread count must be >= 0");
        if (montecarlo.path_points < 2)
            throw validation_error("montecarlo.path_points", "need at least 2 path points");
        if (montecarlo.truncation != "redraw" && montecarlo.truncation != "strict")
            throw validation_error("montecarlo.truncation", "must be \"redraw\" or \"strict\"");
        if (!(sweep.l_sc_min_m > 0.0) || !(sweep.l_sc_max_m < geometry.l_sd_m) ||
            !(sweep.l_sc_min_m < sweep.l_sc_max_m))
            throw validation_error("sweep.l_sc_min_m/l_sc_max_m",
                                   "sweep placements must satisfy 0 < min < max < l_sd_m");
        if (sweep.l_sc_points < 2)
            throw validation_error("sweep.l_sc_points", "need at least 2 sweep points");
        if (!(sweep.f_min_ghz > 0.0) || !(sweep.f_max_ghz < 350.0) ||
            !(sweep.f_min_ghz <= sweep.f_max_ghz))
            throw validation_error("sweep.f_min_ghz/f_max_ghz",
                                   "frequency table range must satisfy 0 < min <= max < 350 GHz");
        if (!(sweep.f_step_ghz > 0.0))
            throw validation_error("sweep.f_step_ghz", "frequency step must be > 0 (GHz)");
        if (optimize.samples < 100)
            throw validation_error("optimize.samples", "need at least 100 samples");
        if (optimize.path_points < 2)
            throw validation_error("optimize.path_points", "need at least 2 path points");

        // Runtime-struct invariants (positivity, model ranges, geometry).
        scenario().validate();
        design_space().validate();
    }
};

namespace detail
{

using json = nlohmann::json;

inline double as_num(const json &v, const std::string &path, const char *unit)
{
    if (!v.is_number())
        throw validation_error(path, std::string("expected a number (") + unit + ")");
    return v.get<double>();
}

inline int as_int(const json &v, const std::string &path)
{
    if (!v.is_number_integer())
        throw validation_error(path, "expected an integer");
    return v.get<int>();
}

inline std::uint64_t as_u64(const json &v, const std::string &path)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw validation_error(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline bool as_bool(const json &v, const std::string &path)
{
    if (!v.is_boolean())
        throw validation_error(path, "expected a boolean");
    return v.get<bool>();
}

inline std::string as_str(const json &v, const std::string &path)
{
    if (!v.is_string())
        throw validation_error(path, "expected a string");
    return v.get<std::string>();
}

inline std::vector<int> as_int_list(const json &v, const std::string &path)
{
    if (!v.is_array())
        throw validation_error(path, "expected a list of integers");
    std::vector<int> out;
    for (const auto &e : v)
        out.push_back(as_int(e, path));
    return out;
}

inline std::vector<double> as_num_list(const json &v, const std::string &path, const char *unit)
{
    if (!v.is_array())
        throw validation_error(path, std::string("expected a list of numbers (") + unit + ")");
    std::vector<double> out;
    for (const auto &e : v)
        out.push_back(as_num(e, path, unit));
    return out;
}

inline void expect_object(const json &v, const std::string &path)
{
    if (!v.is_object())
        throw validation_error(path, "expected an object");
}

inline void load_carrier(const json &j, CarrierGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "carrier." + it.key();
        if (it.key() == "f_c_ghz")
            g.f_c_ghz = as_num(it.value(), p, "GHz");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_atmosphere(const json &j, AtmosphereGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "atmosphere." + it.key();
        if (it.key() == "rho0_g_m3")
            g.rho0_g_m3 = as_num(it.value(), p, "g/m^3");
        else if (it.key() == "h_scale_km")
            g.h_scale_km = as_num(it.value(), p, "km");
        else if (it.key() == "ground_height_s_km")
            g.ground_height_s_km = as_num(it.value(), p, "km");
        else if (it.key() == "ground_height_d_km")
            g.ground_height_d_km = as_num(it.value(), p, "km");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_geometry(const json &j, GeometryGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "geometry." + it.key();
        if (it.key() == "l_sd_m")
            g.l_sd_m = as_num(it.value(), p, "m");
        else if (it.key() == "l_u1_m")
            g.l_u1_m = as_num(it.value(), p, "m");
        else if (it.key() == "l_sc_m")
            g.l_sc_m = as_num(it.value(), p, "m");
        else if (it.key() == "h_u_m")
            g.h_u_m = as_num(it.value(), p, "m");
        else if (it.key() == "psi_s_min_deg")
            g.psi_s_min_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "psi_d_min_deg")
            g.psi_d_min_deg = as_num(it.value(), p, "deg");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_power(const json &j, PowerGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "power." + it.key();
        if (it.key() == "tx_su_w")
            g.tx_su_w = as_num(it.value(), p, "W");
        else if (it.key() == "tx_du_w")
            g.tx_du_w = as_num(it.value(), p, "W");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_noise(const json &j, NoiseGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "noise." + it.key();
        if (it.key() == "psd_dbm_hz")
            g.psd_dbm_hz = as_num(it.value(), p, "dBm/Hz");
        else if (it.key() == "bandwidth_hz")
            g.bandwidth_hz = as_num(it.value(), p, "Hz");
        else if (it.key() == "figure_db")
            g.figure_db = as_num(it.value(), p, "dB");
        else if (it.key() == "power_w")
            g.power_w = as_num(it.value(), p, "W");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_threshold(const json &j, ThresholdGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "threshold." + it.key();
        if (it.key() == "gamma_th_db")
            g.gamma_th_db = as_num(it.value(), p, "dB");
        else if (it.key() == "p_out_tr")
            g.p_out_tr = as_num(it.value(), p, "probability");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_element(const json &j, ElementGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "arrays.element." + it.key();
        if (it.key() == "g_max_dbi")
            g.g_max_dbi = as_num(it.value(), p, "dBi");
        else if (it.key() == "theta_3db_deg")
            g.theta_3db_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "phi_3db_deg")
            g.phi_3db_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "sla_db")
            g.sla_db = as_num(it.value(), p, "dB");
        else if (it.key() == "a_m_db")
            g.a_m_db = as_num(it.value(), p, "dB");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_arrays(const json &j, ArraysGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "arrays." + it.key();
        if (it.key() == "n_sx")
            g.n_sx = as_int(it.value(), p);
        else if (it.key() == "n_sy")
            g.n_sy = as_int(it.value(), p);
        else if (it.key() == "n_dx")
            g.n_dx = as_int(it.value(), p);
        else if (it.key() == "n_dy")
            g.n_dy = as_int(it.value(), p);
        else if (it.key() == "n_usx")
            g.n_usx = as_int(it.value(), p);
        else if (it.key() == "n_usy")
            g.n_usy = as_int(it.value(), p);
        else if (it.key() == "n_udx")
            g.n_udx = as_int(it.value(), p);
        else if (it.key() == "n_udy")
            g.n_udy = as_int(it.value(), p);
        else if (it.key() == "spacing_over_lambda")
            g.spacing_over_lambda = as_num(it.value(), p, "unitless");
        else if (it.key() == "beta_x_deg")
            g.beta_x_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "beta_y_deg")
            g.beta_y_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "element")
        {
            expect_object(it.value(), p);
            load_element(it.value(), g.element);
        }
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_misalignment(const json &j, MisalignmentGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "misalignment." + it.key();
        if (it.key() == "mu_qw_deg")
            g.mu_qw_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "sigma_qw_deg")
            g.sigma_qw_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "mu_uqx_deg")
            g.mu_uqx_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "mu_uqy_deg")
            g.mu_uqy_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "sigma_uqx_deg")
            g.sigma_uqx_deg = as_num(it.value(), p, "deg");
        else if (it.key() == "sigma_uqy_deg")
            g.sigma_uqy_deg = as_num(it.value(), p, "deg");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_montecarlo(const json &j, MonteCarloGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "montecarlo." + it.key();
        if (it.key() == "samples")
            g.samples = as_u64(it.value(), p);
        else if (it.key() == "seed")
            g.seed = as_u64(it.value(), p);
        else if (it.key() == "threads")
            g.threads = as_int(it.value(), p);
        else if (it.key() == "path_points")
            g.path_points = as_int(it.value(), p);
        else if (it.key() == "truncation")
            g.truncation = as_str(it.value(), p);
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_sweep(const json &j, SweepGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "sweep." + it.key();
        if (it.key() == "l_sc_min_m")
            g.l_sc_min_m = as_num(it.value(), p, "m");
        else if (it.key() == "l_sc_max_m")
            g.l_sc_max_m = as_num(it.value(), p, "m");
        else if (it.key() == "l_sc_points")
            g.l_sc_points = as_int(it.value(), p);
        else if (it.key() == "f_min_ghz")
            g.f_min_ghz = as_num(it.value(), p, "GHz");
        else if (it.key() == "f_max_ghz")
            g.f_max_ghz = as_num(it.value(), p, "GHz");
        else if (it.key() == "f_step_ghz")
            g.f_step_ghz = as_num(it.value(), p, "GHz");
        else
            throw validation_error(p, "unknown key");
    }
}

inline void load_optimize(const json &j, OptimizeGroup &g)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string p = "optimize." + it.key();
        if (it.key() == "n_sx")
            g.n_sx = as_int_list(it.value(), p);
        else if (it.key() == "n_sy")
            g.n_sy = as_int_list(it.value(), p);
        else if (it.key() == "n_dx")
            g.n_dx = as_int_list(it.value(), p);
        else if (it.key() == "n_dy")
            g.n_dy = as_int_list(it.value(), p);
        else if (it.key() == "n_usx")
            g.n_usx = as_int_list(it.value(), p);
        else if (it.key() == "n_usy")
            g.n_usy = as_int_list(it.value(), p);
        else if (it.key() == "n_udx")
            g.n_udx = as_int_list(it.value(), p);
        else if (it.key() == "n_udy")
            g.n_udy = as_int_list(it.value(), p);
        else if (it.key() == "h_u_m")
            g.h_u_m = as_num_list(it.value(), p, "m");
        else if (it.key() == "l_sc_m")
            g.l_sc_m = as_num_list(it.value(), p, "m");
        else if (it.key() == "tie_uav_arrays")
            g.tie_uav_arrays = as_bool(it.value(), p);
        else if (it.key() == "tie_ground_arrays")
            g.tie_ground_arrays = as_bool(it.value(), p);
        else if (it.key() == "prune")
            g.prune = as_bool(it.value(), p);
        else if (it.key() == "samples")
            g.samples = as_u64(it.value(), p);
        else if (it.key() == "path_points")
            g.path_points = as_int(it.value(), p);
        else
            throw validation_error(p, "unknown key");
    }
}

} // namespace detail

// Parses a configuration from JSON text. Missing groups/keys fall back to
// the defaults above; unknown keys are rejected by full key path; values of
// the wrong type are rejected naming the expected type and unit. An empty
// (or whitespace-only) document yields the full default configuration.
inline ScenarioConfig parse_config(const std::string &text)
{
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty())
        return ScenarioConfig{};

    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw validation_error("<config>", std::string("JSON parse error: ") + e.what());
    }
    detail::expect_object(j, "<config>");

    ScenarioConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string &k = it.key();
        if (k != "carrier" && k != "atmosphere" && k != "geometry" && k != "power" &&
            k != "noise" && k != "threshold" && k != "arrays" && k != "misalignment" &&
            k != "montecarlo" && k != "sweep" && k != "optimize")
            throw validation_error(k, "unknown key");
        detail::expect_object(it.value(), k);
    }
    if (j.contains("carrier"))
        detail::load_carrier(j["carrier"], cfg.carrier);
    if (j.contains("atmosphere"))
        detail::load_atmosphere(j["atmosphere"], cfg.atmosphere);
    if (j.contains("geometry"))
        detail::load_geometry(j["geometry"], cfg.geometry);
    if (j.contains("power"))
        detail::load_power(j["power"], cfg.power);
    if (j.contains("noise"))
        detail::load_noise(j["noise"], cfg.noise);
    if (j.contains("threshold"))
        detail::load_threshold(j["threshold"], cfg.threshold);
    if (j.contains("arrays"))
        detail::load_arrays(j["arrays"], cfg.arrays);
    if (j.contains("misalignment"))
        detail::load_misalignment(j["misalignment"], cfg.misalignment);
    if (j.contains("montecarlo"))
        detail::load_montecarlo(j["montecarlo"], cfg.montecarlo);
    if (j.contains("sweep"))
        detail::load_sweep(j["sweep"], cfg.sweep);
    if (j.contains("optimize"))
        detail::load_optimize(j["optimize"], cfg.optimize);

    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// Serializes the full configuration (canonical: every key present, sorted
// object order). parse_config(config_to_json(cfg).dump()) == cfg.
inline nlohmann::json config_to_json(const ScenarioConfig &c)
{
    nlohmann::json j;
    j["carrier"] = {{"f_c_ghz", c.carrier.f_c_ghz}};
    j["atmosphere"] = {{"rho0_g_m3", c.atmosphere.rho0_g_m3},
                       {"h_scale_km", c.atmosphere.h_scale_km},
                       {"ground_height_s_km", c.atmosphere.ground_height_s_km},
                       {"ground_height_d_km", c.atmosphere.ground_height_d_km}};
    j["geometry"] = {{"l_sd_m", c.geometry.l_sd_m},   {"l_u1_m", c.geometry.l_u1_m},
                     {"l_sc_m", c.geometry.l_sc_m},   {"h_u_m", c.geometry.h_u_m},
                     {"psi_s_min_deg", c.geometry.psi_s_min_deg},
                     {"psi_d_min_deg", c.geometry.psi_d_min_deg}};
    j["power"] = {{"tx_su_w", c.power.tx_su_w}, {"tx_du_w", c.power.tx_du_w}};
    j["noise"] = {{"psd_dbm_hz", c.noise.psd_dbm_hz},
                  {"bandwidth_hz", c.noise.bandwidth_hz},
                  {"figure_db", c.noise.figure_db}};
    if (c.noise.power_w)
        j["noise"]["power_w"] = *c.noise.power_w;
    j["threshold"] = {{"gamma_th_db", c.threshold.gamma_th_db},
                      {"p_out_tr", c.threshold.p_out_tr}};
    j["arrays"] = {{"n_sx", c.arrays.n_sx},
                   {"n_sy", c.arrays.n_sy},
                   {"n_dx", c.arrays.n_dx},
                   {"n_dy", c.arrays.n_dy},
                   {"n_usx", c.arrays.n_usx},
                   {"n_usy", c.arrays.n_usy},
                   {"n_udx", c.arrays.n_udx},
                   {"n_udy", c.arrays.n_udy},
                   {"spacing_over_lambda", c.arrays.spacing_over_lambda},
                   {"beta_x_deg", c.arrays.beta_x_deg},
                   {"beta_y_deg", c.arrays.beta_y_deg},
                   {"element",
                    {{"g_max_dbi", c.arrays.element.g_max_dbi},
                     {"theta_3db_deg", c.arrays.element.theta_3db_deg},
                     {"phi_3db_deg", c.arrays.element.phi_3db_deg},
                     {"sla_db", c.arrays.element.sla_db},
                     {"a_m_db", c.arrays.element.a_m_db}}}};
    j["misalignment"] = {{"mu_qw_deg", c.misalignment.mu_qw_deg},
                         {"sigma_qw_deg", c.misalignment.sigma_qw_deg},
                         {"mu_uqx_deg", c.misalignment.mu_uqx_deg},
                         {"mu_uqy_deg", c.misalignment.mu_uqy_deg},
                         {"sigma_uqx_deg", c.misalignment.sigma_uqx_deg},
                         {"sigma_uqy_deg", c.misalignment.sigma_uqy_deg}};
    j["montecarlo"] = {{"samples", c.montecarlo.samples},
                       {"seed", c.montecarlo.seed},
                       {"threads", c.montecarlo.threads},
                       {"path_points", c.montecarlo.path_points},
                       {"truncation", c.montecarlo.truncation}};
    j["sweep"] = {{"l_sc_min_m", c.sweep.l_sc_min_m},
                  {"l_sc_max_m", c.sweep.l_sc_max_m},
                  {"l_sc_points", c.sweep.l_sc_points},
                  {"f_min_ghz", c.sweep.f_min_ghz},
                  {"f_max_ghz", c.sweep.f_max_ghz},
                  {"f_step_ghz", c.sweep.f_step_ghz}};
    j["optimize"] = {{"n_sx", c.optimize.n_sx},
                     {"n_sy", c.optimize.n_sy},
                     {"n_dx", c.optimize.n_dx},
                     {"n_dy", c.optimize.n_dy},
                     {"n_usx", c.optimize.n_usx},
                     {"n_usy", c.optimize.n_usy},
                     {"n_udx", c.optimize.n_udx},
                     {"n_udy", c.optimize.n_udy},
                     {"h_u_m", c.optimize.h_u_m},
                     {"l_sc_m", c.optimize.l_sc_m},
                     {"tie_uav_arrays", c.optimize.tie_uav_arrays},
                     {"tie_ground_arrays", c.optimize.tie_ground_arrays},
                     {"prune", c.optimize.prune},
                     {"samples", c.optimize.samples},
                     {"path_points", c.optimize.path_points}};
    return j;
}

inline void save_config(const ScenarioConfig &c, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error(path, "cannot open config file for writing");
    out << config_to_json(c).dump(2) << "\n";
}

} // namespace nfplink

#endif // NFPLINK_SCENARIO_HPP

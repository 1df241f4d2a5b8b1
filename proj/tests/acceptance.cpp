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
//
// Acceptance gate: ten end-to-end checks of the simulator against
// first-principles oracles, structural invariants and reproducibility
// guarantees. Each check prints exactly one [PASS]/[FAIL] line; the binary
// exits non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nfplink/nfplink.hpp>

#include "oracle_quadrature.hpp"

using namespace nfplink;

namespace
{

int g_failures = 0;

void report(int num, const std::string &name, bool ok, const std::string &detail)
{
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << name;
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok)
        ++g_failures;
}

class Timer
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 4)
{
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

ArrayConfig half_wave_array(int n_x, int n_y)
{
    ArrayConfig a;
    a.n_x = n_x;
    a.n_y = n_y;
    a.d_x_m = wavelength_m(70.0) / 2.0;
    a.d_y_m = a.d_x_m;
    return a;
}

MisalignmentStats stats_deg(double mu_x, double mu_y, double s_x, double s_y)
{
    MisalignmentStats st;
    st.mu_x_rad = deg2rad(mu_x);
    st.mu_y_rad = deg2rad(mu_y);
    st.sigma_x_rad = deg2rad(s_x);
    st.sigma_y_rad = deg2rad(s_y);
    return st;
}

// ---------------------------------------------------------------- check 1
// Clear-air absorption: anchor values of the dry-air fit and continuity of
// the piecewise branches.
void check_1()
{
    const std::string name = "dry-air absorption anchors and branch continuity";
    Timer t;
    try
    {
        const double g60 = oxygen_attn_sea_level(60.0);
        const double g70 = oxygen_attn_sea_level(70.0);
        bool ok = std::fabs(g60 - 14.925) <= 0.01 && std::fabs(g70 - 0.4043) <= 0.0005;

        double worst_jump = 0.0;
        for (const double f : {57.0, 60.0, 63.0})
        {
            const double jump =
                std::fabs(oxygen_attn_sea_level(f + 1e-9) - oxygen_attn_sea_level(f - 1e-9));
            worst_jump = std::max(worst_jump, jump);
        }
        ok = ok && worst_jump <= 1e-6;

        const double dt = t.seconds();
        ok = ok && dt < 1.0;
        report(1, name,
               ok,
               "60 GHz " + fmt(g60, 6) + " dB/km, 70 GHz " + fmt(g70, 6) +
                   " dB/km, max branch jump " + fmt(worst_jump, 3) + ", " + fmt(dt, 3) + " s");
    }
    catch (const std::exception &e)
    {
        report(1, name, false, e.what());
    }
}

// ---------------------------------------------------------------- check 2
// Closed-form slant attenuation against composite-Simpson integration of the
// exponential profile, over randomized frequency/height/elevation geometries.
void check_2()
{
    const std::string name = "slant-path closed form matches numerical integration";
    Timer t;
    try
    {
        double worst_rel = 0.0;
        int n_checked = 0;
        for (int i = 0; i < 100; ++i)
        {
            sample_rng rng(42u, 0u, static_cast<std::uint64_t>(i));
            const double f = 1.0 + 339.0 * rng.uniform();
            const double rho = 30.0 * rng.uniform();
            const double h1 = 3.0 * rng.uniform();
            const double h2 = h1 + 0.1 + 19.9 * rng.uniform();
            const double psi = 0.02 + (pi / 2.0 - 0.02) * rng.uniform();

            AtmosphereParams atm;
            atm.rho0_g_m3 = rho;
            atm.h_scale_km = 0.8 + 2.2 * rng.uniform();

            const double closed = slant_attn_total(f, h1, h2, psi, atm);

            // Composite Simpson along the slant, s in km from 0 to the
            // segment length; gamma(s) = gamma0 * exp(-(h1 + s sin psi)/Hs).
            const int n = 4096; // even
            const double len = (h2 - h1) / std::sin(psi);
            const double h = len / n;
            double sum = specific_attn_at_height(f, h1, atm) +
                         specific_attn_at_height(f, h2, atm);
            for (int j = 1; j < n; ++j)
                sum += (j % 2 ? 4.0 : 2.0) *
                       specific_attn_at_height(f, h1 + j * h * std::sin(psi), atm);
            const double numeric = sum * h / 3.0;

            const double rel = std::fabs(closed - numeric) / std::max(numeric, 1e-300);
            worst_rel = std::max(worst_rel, rel);
            ++n_checked;
        }
        const double dt = t.seconds();
        const bool ok = n_checked == 100 && worst_rel <= 1e-6 && dt < 10.0;
        report(2, name, ok,
               "100 geometries, worst relative error " + fmt(worst_rel, 3) + ", " + fmt(dt, 3) +
                   " s");
    }
    catch (const std::exception &e)
    {
        report(2, name, false, e.what());
    }
}

// ---------------------------------------------------------------- check 3
// Array gains: exact boresight value and first-null placement.
void check_3()
{
    const std::string name = "array boresight gain exact, first nulls at predicted angles";
    Timer t;
    try
    {
        const double k = wavenumber_rad_per_m(70.0);
        bool ok = true;
        double worst_null = 0.0;
        for (const int n : {4, 8, 12, 18})
        {
            const ArrayConfig a = half_wave_array(n, n);
            const PointingSample bore = pointing_from_axes(0.0, 0.0);
            const double g0 = composite_gain(a, k, bore);
            const double expect = static_cast<double>(n) * n * element_gain(bore, a.element);
            ok = ok && g0 == expect; // bit-exact at boresight

            // First null of the half-wave axis kernel: sin(theta) = 2/N.
            const double predicted = std::asin(2.0 / n);
            auto af = [&](double theta) {
                return array_factor_axis(n, a.d_x_m, k, 0.0, std::sin(theta));
            };
            double lo = predicted * 0.9, hi = predicted * 1.1;
            if (af(lo) * af(hi) >= 0.0)
            {
                ok = false;
                continue;
            }
            for (int it = 0; it < 80; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (af(lo) * af(mid) <= 0.0 ? hi : lo) = mid;
            }
            const double err = std::fabs(0.5 * (lo + hi) - predicted);
            worst_null = std::max(worst_null, err);
            ok = ok && err <= 1e-9;
        }
        const double dt = t.seconds();
        ok = ok && dt < 1.0;
        report(3, name, ok,
               "N in {4,8,12,18}, worst null offset " + fmt(worst_null, 3) + " rad, " +
                   fmt(dt, 3) + " s");
    }
    catch (const std::exception &e)
    {
        report(3, name, false, e.what());
    }
}

// ---------------------------------------------------------------- check 4
// Monte-Carlo estimators against the deterministic quadrature oracle on
// small (2x2) arrays: conditional capacity and end-to-end outage.
void check_4()
{
    const std::string name = "estimators match the quadrature oracle on small arrays";
    Timer t;
    try
    {
        RelayScenario sc;
        sc.hop_su.tx_power_w = 1.0;
        sc.hop_su.ground_array = half_wave_array(2, 2);
        sc.hop_su.ground_stats = stats_deg(0.5, 0.5, 1.0, 1.0);
        sc.hop_su.uav_array = half_wave_array(2, 2);
        sc.hop_su.uav_stats = stats_deg(2.0, 1.0, 3.0, 3.0);
        sc.hop_du = sc.hop_su;
        sc.hop_du.tx_power_w = 0.2;

        const PathPoint mid = path_profile(sc.geometry, 3)[1]; // theta = pi/2
        const std::uint64_t n = 1000000;

        // Capacity of the source hop.
        const EstimatorResult cap_mc =
            conditional_hop_capacity(sc.hop_su, mid.l_s_m, mid.psi_s_rad, n, 4, {});
        const double cap_q = oracle::hop_capacity(sc.hop_su, mid.l_s_m, mid.psi_s_rad, 48);
        const double cap_err = std::fabs(cap_mc.mean - cap_q);
        const double cap_tol = 3.0 * cap_mc.std_error + 1e-9;

        // End-to-end outage. The outage oracle integrates a thresholded
        // indicator: its outer quadrature converges slowly across the kinks
        // where the threshold crosses the inner-axis gain peak, so the
        // comparison scenario freezes the ground axes (sigma = 0) - leaving
        // one analytic axis plus one densely resolved outer axis per hop,
        // where the oracle error is provably far below the Monte-Carlo
        // tolerance. Hop amplitudes are equalized so both hops contribute,
        // and the threshold sits inside the gain spread so the probability
        // is well away from 0 and 1.
        RelayScenario so = sc;
        so.hop_su.ground_stats.sigma_x_rad = 0.0;
        so.hop_su.ground_stats.sigma_y_rad = 0.0;
        so.hop_du.ground_stats = so.hop_su.ground_stats;
        so.hop_su.tx_power_w = so.hop_du.tx_power_w *
                               hop_channel_gain(so.hop_du, mid.l_d_m, mid.psi_d_rad) /
                               hop_channel_gain(so.hop_su, mid.l_s_m, mid.psi_s_rad);

        const double k = so.hop_du.carrier.k_rad_per_m();
        const double g_mean =
            composite_gain(so.hop_du.ground_array, k,
                           pointing_from_axes(so.hop_du.ground_stats.mu_x_rad,
                                              so.hop_du.ground_stats.mu_y_rad)) *
            composite_gain(so.hop_du.uav_array, k,
                           pointing_from_axes(so.hop_du.uav_stats.mu_x_rad,
                                              so.hop_du.uav_stats.mu_y_rad));
        const double amp_du = so.hop_du.tx_power_w / so.hop_du.noise_power_w *
                              hop_channel_gain(so.hop_du, mid.l_d_m, mid.psi_d_rad);
        so.gamma_th = 0.93 * amp_du * g_mean;

        const OutageEstimate out_mc =
            conditional_outage(so, mid.l_s_m, mid.l_d_m, mid.psi_s_rad, mid.psi_d_rad, n, 4, {});
        const double out_q =
            oracle::e2e_outage(so, mid.l_s_m, mid.l_d_m, mid.psi_s_rad, mid.psi_d_rad, 768);
        const double p = out_mc.probability;
        const double out_se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
        const double out_err = std::fabs(p - out_q);
        const double out_tol = 3.0 * out_se + 1e-9;

        const double dt = t.seconds();
        const bool sane = p > 0.001 && p < 0.999;
        const bool ok = cap_err <= cap_tol && out_err <= out_tol && sane && dt < 120.0;
        report(4, name, ok,
               "capacity err " + fmt(cap_err, 3) + " (tol " + fmt(cap_tol, 3) + "), outage " +
                   fmt(p, 4) + " err " + fmt(out_err, 3) + " (tol " + fmt(out_tol, 3) + "), " +
                   fmt(dt, 3) + " s");
    }
    catch (const std::exception &e)
    {
        report(4, name, false, e.what());
    }
}

// ------------------------------------------------------------ checks 5 & 6
// Placement sweep of the conditional capacities with the relay above the
// circle center: hop capacities move strictly in opposite directions, the
// end-to-end curve is their pointwise minimum, and its best placement sits
// at the crossing.
struct SweepData
{
    std::vector<double> l_sc, c_su, c_du, c_e2e;
    int cross_index = -1;  // last index before the sign change of c_su - c_du
    int argmax_index = -1;
    std::string error;
};

SweepData run_sweep()
{
    SweepData s;
    try
    {
        const ScenarioConfig cfg;
        const RelayScenario sc = cfg.scenario();
        const std::uint64_t n = 20000, seed = 6;
        const int points = cfg.sweep.l_sc_points;
        const double lo = cfg.sweep.l_sc_min_m, hi = cfg.sweep.l_sc_max_m;
        const double h_u = sc.geometry.h_u_m;

        for (int i = 0; i < points; ++i)
        {
            const double l_sc = lo + (hi - lo) * i / (points - 1);
            const double l_s = std::hypot(l_sc, h_u);
            const double l_d = std::hypot(sc.geometry.l_sd_m - l_sc, h_u);
            const double cs = conditional_hop_capacity(sc.hop_su, l_s, elevation_angle(l_s, h_u),
                                                       n, seed, {}, su_streams)
                                  .mean;
            const double cd = conditional_hop_capacity(sc.hop_du, l_d, elevation_angle(l_d, h_u),
                                                       n, seed, {}, du_streams)
                                  .mean;
            s.l_sc.push_back(l_sc);
            s.c_su.push_back(cs);
            s.c_du.push_back(cd);
            s.c_e2e.push_back(std::min(cs, cd));
        }
        for (std::size_t i = 1; i < s.l_sc.size(); ++i)
            if ((s.c_su[i - 1] - s.c_du[i - 1]) * (s.c_su[i] - s.c_du[i]) <= 0.0)
            {
                s.cross_index = static_cast<int>(i) - 1;
                break;
            }
        s.argmax_index = static_cast<int>(
            std::max_element(s.c_e2e.begin(), s.c_e2e.end()) - s.c_e2e.begin());
    }
    catch (const std::exception &e)
    {
        s.error = e.what();
    }
    return s;
}

void check_5(const SweepData &s)
{
    const std::string name = "hop capacities move monotonically; end-to-end is their minimum";
    if (!s.error.empty())
    {
        report(5, name, false, s.error);
        return;
    }
    bool mono = true;
    for (std::size_t i = 1; i < s.l_sc.size(); ++i)
        mono = mono && s.c_su[i] < s.c_su[i - 1] && s.c_du[i] > s.c_du[i - 1];
    bool is_min = true;
    for (std::size_t i = 0; i < s.l_sc.size(); ++i)
        is_min = is_min && s.c_e2e[i] == std::min(s.c_su[i], s.c_du[i]);
    report(5, name, mono && is_min,
           std::to_string(s.l_sc.size()) + " placements, strict monotonicity " +
               (mono ? "holds" : "violated") + ", min identity " +
               (is_min ? "exact" : "violated"));
}

void check_6(const SweepData &s)
{
    const std::string name = "best placement of the end-to-end curve sits at the hop crossing";
    if (!s.error.empty())
    {
        report(6, name, false, s.error);
        return;
    }
    if (s.cross_index < 0)
    {
        report(6, name, false, "capacity curves do not cross inside the sweep range");
        return;
    }
    const int d = std::abs(s.argmax_index - s.cross_index);
    report(6, name, d <= 1,
           "crossing near index " + std::to_string(s.cross_index) + ", argmax at " +
               std::to_string(s.argmax_index) + ", distance " + std::to_string(d) +
               " grid steps");
}

// ---------------------------------------------------------------- check 7
// Constrained design search on the reduced relay-array grid: the winner has
// n_uqy >= n_uqx, the constrained capacity profile over n_uqx rises to a
// peak, and large n_uqx is infeasible everywhere under the outage target.
void check_7()
{
    const std::string name = "design search: ordered winner, unimodal profile, infeasible tail";
    Timer t;
    try
    {
        const ScenarioConfig cfg;
        const RelayScenario base = cfg.scenario();

        DesignSpace space;
        space.n_sx = {18};
        space.n_usx = {8, 10, 12, 14, 16, 18};
        space.n_usy = {8, 10, 12, 14, 16, 18};
        space.h_u_m = {3000.0};
        // l_sc grid 9200:400:15200 (the DesignSpace default).

        OptimizeBudget budget;
        budget.n_samples = 100000;
        budget.path_points = 61;

        const OptimizeReport rep = optimize(space, base, budget, 1, {});

        bool ok = rep.best_index.has_value();
        std::ostringstream detail;
        if (!ok)
        {
            detail << "no feasible design";
        }
        else
        {
            const DesignPoint &best = rep.ranked[*rep.best_index];
            ok = best.n_usy >= best.n_usx;
            detail << "best (" << best.n_usx << "," << best.n_usy << ") at l_sc "
                   << best.l_sc_m << " m, capacity " << fmt(best.avg_capacity.mean, 5);

            // Constrained profile: best feasible capacity for each n_uqx.
            std::map<int, double> profile;
            for (const auto &p : rep.ranked)
                if (p.feasible)
                {
                    auto [it, inserted] = profile.emplace(p.n_usx, p.avg_capacity.mean);
                    if (!inserted)
                        it->second = std::max(it->second, p.avg_capacity.mean);
                }

            ok = ok && profile.size() >= 2;      // "rises" must be non-vacuous
            ok = ok && profile.count(12) == 1;   // the known-good mid size works
            for (const int big : {14, 16, 18})   // the tail fails feasibility
                ok = ok && profile.count(big) == 0;

            // Rises to the peak, never rises after it.
            if (!profile.empty())
            {
                const auto peak = std::max_element(
                    profile.begin(), profile.end(),
                    [](const auto &a, const auto &b) { return a.second < b.second; });
                double prev = -1.0;
                for (auto it = profile.begin(); it != profile.end(); ++it)
                {
                    if (it->first <= peak->first)
                        ok = ok && it->second > prev;
                    else
                        ok = ok && it->second <= prev;
                    prev = it->second;
                }
                detail << ", profile";
                for (const auto &[nx, c] : profile)
                    detail << " " << nx << ":" << fmt(c, 5);
            }
        }
        const double dt = t.seconds();
        ok = ok && dt < 1800.0;
        detail << ", " << fmt(dt, 1) << " s";
        report(7, name, ok, detail.str());
    }
    catch (const std::exception &e)
    {
        report(7, name, false, e.what());
    }
}

// ---------------------------------------------------------------- check 8
// Path-averaged capacity: the integrator agrees with an independently seeded
// per-point trapezoid, and the path length rate |dL_s/dtheta| varies
// substantially along the circle (zero at the extremes counts as maximal
// variation).
void check_8()
{
    const std::string name = "path average matches independent trapezoid; length rate varies";
    Timer t;
    try
    {
        const ScenarioConfig cfg;
        const RelayScenario sc = cfg.scenario();
        const int m = 61;
        const std::uint64_t n = 20000;

        const PathCapacityCurve curve = e2e_avg_capacity(sc, m, n, 8, {});

        // Independent estimate: fresh seed, per-point estimators, trapezoid.
        const std::vector<PathPoint> pts = path_profile(sc.geometry, m);
        double integral = 0.0, se_lin = 0.0;
        const double d_theta = pi / (m - 1);
        for (int j = 0; j < m; ++j)
        {
            const double w = ((j == 0 || j == m - 1) ? 0.5 : 1.0) * d_theta / pi;
            const EstimatorResult cs = conditional_hop_capacity(
                sc.hop_su, pts[j].l_s_m, pts[j].psi_s_rad, n, 808, {}, su_streams);
            const EstimatorResult cd = conditional_hop_capacity(
                sc.hop_du, pts[j].l_d_m, pts[j].psi_d_rad, n, 808, {}, du_streams);
            integral += w * std::min(cs.mean, cd.mean);
            se_lin += w * std::max(cs.std_error, cd.std_error);
        }

        // Conservative combined uncertainty: per-point errors are positively
        // correlated through the shared draws, so sum them linearly.
        const double tol = 3.0 * (curve.min_of_averages.std_error + se_lin) + 1e-9;
        const double err = std::fabs(curve.min_of_averages.mean - integral);
        bool ok = err <= tol;

        // |dL_s/dtheta| = l_sc * r * sin(theta) / L_s across the grid.
        const double r_m = sc.geometry.l_u1_m / 2.0;
        double lo = 1e300, hi = 0.0;
        for (const auto &p : pts)
        {
            const double rate = sc.geometry.l_sc_m * r_m * std::sin(p.theta_r1_rad) / p.l_s_m;
            lo = std::min(lo, rate);
            hi = std::max(hi, rate);
        }
        const bool rate_varies = lo == 0.0 || hi / lo > 1.5;
        ok = ok && rate_varies;

        report(8, name, ok,
               "path avg " + fmt(curve.min_of_averages.mean, 5) + " vs " + fmt(integral, 5) +
                   " (err " + fmt(err, 3) + ", tol " + fmt(tol, 3) + "), rate range [" +
                   fmt(lo, 3) + ", " + fmt(hi, 3) + "] m/rad, " + fmt(t.seconds(), 3) + " s");
    }
    catch (const std::exception &e)
    {
        report(8, name, false, e.what());
    }
}

// ---------------------------------------------------------------- check 9
// The command-line front end writes byte-identical tables regardless of the
// thread count, and across reruns.
std::optional<std::string> slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_9(const std::string &cli)
{
    const std::string name = "result tables are byte-identical across thread counts";
    if (cli.empty())
    {
        report(9, name, false, "no --cli <path> given");
        return;
    }
    Timer t;
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("acceptance_c9_tmp");
    try
    {
        fs::create_directories(dir);
        auto run = [&](const std::string &cmd, int threads, const std::string &out) {
            const std::string full = "\"" + cli + "\" " + cmd +
                                     " --samples 2000 --seed 5 --threads " +
                                     std::to_string(threads) + " --out " + (dir / out).string() +
                                     " > " + (dir / (out + ".log")).string() + " 2>&1";
            return std::system(full.c_str()) == 0;
        };

        bool ok = run("sweep-theta", 1, "t1.csv") && run("sweep-theta", 8, "t8.csv") &&
                  run("sweep-theta", 8, "t8b.csv") && run("outage-map", 1, "o1.csv") &&
                  run("outage-map", 8, "o8.csv");
        std::string detail = ok ? "" : "a CLI invocation failed; ";
        if (ok)
        {
            const auto t1 = slurp(dir / "t1.csv"), t8 = slurp(dir / "t8.csv"),
                       t8b = slurp(dir / "t8b.csv"), o1 = slurp(dir / "o1.csv"),
                       o8 = slurp(dir / "o8.csv");
            ok = t1 && t8 && t8b && o1 && o8 && !t1->empty() && !o1->empty();
            if (ok)
            {
                const bool sweep_same = *t1 == *t8 && *t8 == *t8b;
                const bool outage_same = *o1 == *o8;
                ok = sweep_same && outage_same;
                detail = std::string("sweep-theta 1/8/8 threads ") +
                         (sweep_same ? "identical" : "differ") + ", outage-map 1/8 threads " +
                         (outage_same ? "identical" : "differ");
            }
            else
            {
                detail += "an output table is missing or empty";
            }
        }
        fs::remove_all(dir);
        report(9, name, ok, detail + ", " + fmt(t.seconds(), 3) + " s");
    }
    catch (const std::exception &e)
    {
        std::error_code ec;
        fs::remove_all(dir, ec);
        report(9, name, false, e.what());
    }
}

// --------------------------------------------------------------- check 10
// Monte-Carlo convergence: quadrupling the sample count halves the reported
// standard error of the end-to-end capacity estimate.
void check_10()
{
    const std::string name = "standard error halves when the sample count quadruples";
    Timer t;
    try
    {
        const ScenarioConfig cfg;
        const RelayScenario sc = cfg.scenario();
        const PathPoint mid = path_profile(sc.geometry, 3)[1];

        bool ok = true;
        std::ostringstream detail;
        for (const std::uint64_t n : {std::uint64_t{10000}, std::uint64_t{40000}})
        {
            const double se_n = conditional_e2e_capacity(sc, mid.l_s_m, mid.l_d_m, mid.psi_s_rad,
                                                         mid.psi_d_rad, n, 10, {})
                                    .std_error;
            const double se_4n = conditional_e2e_capacity(sc, mid.l_s_m, mid.l_d_m, mid.psi_s_rad,
                                                          mid.psi_d_rad, 4 * n, 10, {})
                                     .std_error;
            const double ratio = se_4n / se_n;
            ok = ok && ratio > 0.4 && ratio < 0.6;
            detail << "n=" << n << " ratio " << fmt(ratio, 4) << "; ";
        }
        report(10, name, ok, detail.str() + fmt(t.seconds(), 3) + " s");
    }
    catch (const std::exception &e)
    {
        report(10, name, false, e.what());
    }
}

} // namespace

int main(int argc, char **argv)
{
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli")
            cli = argv[i + 1];

    check_1();
    check_2();
    check_3();
    check_4();
    const SweepData sweep = run_sweep();
    check_5(sweep);
    check_6(sweep);
    check_7();
    check_8();
    check_9(cli);
    check_10();

    if (g_failures == 0)
        std::cout << "all criteria passed" << std::endl;
    else
        std::cout << g_failures << " criteria failed" << std::endl;
    return g_failures == 0 ? 0 : 1;
}

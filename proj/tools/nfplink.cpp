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
// Command-line front end. One subcommand per study:
//   atmos-table  specific attenuation vs carrier frequency (no Monte Carlo)
//   sweep-ls     conditional capacities / outage vs relay placement
//   sweep-theta  capacity along the circular flight path + path average
//   outage-map   per-hop and end-to-end outage along the flight path
//   max-length   per-hop maximum link lengths and accepted placement interval
//   optimize     constrained grid search over array sizes and placement
//
// Exit codes: 0 success, 2 validation error, 3 infeasible optimization,
// 4 numerical failure. Errors also go to stderr as a single JSON line.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"

#include <nfplink/nfplink.hpp>

namespace
{

using namespace nfplink;

struct CliArgs
{
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    int threads = 0;
    bool seed_given = false;
    bool samples_given = false;
    bool threads_given = false;
    bool strict_truncation = false;
    bool no_prune = false;
};

// Config file plus command-line overrides = the effective configuration;
// everything downstream (including the table hash) sees only this.
ScenarioConfig effective_config(const CliArgs &a)
{
    ScenarioConfig cfg = a.config_path.empty() ? ScenarioConfig{} : load_config(a.config_path);
    if (a.seed_given)
        cfg.montecarlo.seed = a.seed;
    if (a.samples_given)
    {
        cfg.montecarlo.samples = a.samples;
        cfg.optimize.samples = a.samples;
    }
    if (a.threads_given)
        cfg.montecarlo.threads = a.threads;
    if (a.strict_truncation)
        cfg.montecarlo.truncation = "strict";
    if (a.no_prune)
        cfg.optimize.prune = false;
    cfg.validate();
    return cfg;
}

std::string default_out(const std::string &command)
{
    const char *dir = std::getenv("NFPLINK_OUT_DIR");
    const std::string d = (dir != nullptr && *dir != '\0') ? dir : ".";
    return d + "/" + command + ".csv";
}

// ---------------------------------------------------------------- commands

void run_atmos_table(const ScenarioConfig &cfg, ResultRecord &rec)
{
    rec.samples = 0; // deterministic table
    rec.columns = {"f_ghz", "oxygen_db_per_km", "water_db_per_km", "total_db_per_km"};
    const auto &sw = cfg.sweep;
    const auto n_steps =
        static_cast<long>(std::floor((sw.f_max_ghz - sw.f_min_ghz) / sw.f_step_ghz + 1e-9)) + 1;
    for (long i = 0; i < n_steps; ++i)
    {
        const double f = sw.f_min_ghz + static_cast<double>(i) * sw.f_step_ghz;
        const double ox = oxygen_attn_sea_level(f);
        const double wa = water_attn_sea_level(f, cfg.atmosphere.rho0_g_m3);
        rec.rows.push_back({f, ox, wa, ox + wa});
    }
    rec.summary["n_rows"] = rec.rows.size();
}

void run_sweep_ls(const ScenarioConfig &cfg, ResultRecord &rec)
{
    const RelayScenario sc = cfg.scenario();
    const McOptions opt = cfg.mc_options();
    const std::uint64_t n = cfg.montecarlo.samples;
    const std::uint64_t seed = cfg.montecarlo.seed;
    const double h_u = sc.geometry.h_u_m;

    rec.columns = {"l_sc_m", "l_s_m",  "l_d_m",  "psi_s_rad", "psi_d_rad",
                   "c_su",   "se_su",  "c_du",   "se_du",     "c_e2e",
                   "c_e2e_sample_min", "se_e2e_sample_min",   "p_out_e2e"};

    const int points = cfg.sweep.l_sc_points;
    std::vector<double> ls(points), csu(points), cdu(points), ce2e(points);
    for (int i = 0; i < points; ++i)
    {
        const double l_sc = cfg.sweep.l_sc_min_m +
                            static_cast<double>(i) * (cfg.sweep.l_sc_max_m - cfg.sweep.l_sc_min_m) /
                                static_cast<double>(points - 1);
        // Conditional study with the relay hovering over the circle center.
        const double l_s = std::hypot(l_sc, h_u);
        const double l_d = std::hypot(sc.geometry.l_sd_m - l_sc, h_u);
        const double psi_s = elevation_angle(l_s, h_u);
        const double psi_d = elevation_angle(l_d, h_u);

        const EstimatorResult c_su = conditional_hop_capacity(sc.hop_su, l_s, psi_s, n, seed, opt, su_streams);
        const EstimatorResult c_du = conditional_hop_capacity(sc.hop_du, l_d, psi_d, n, seed, opt, du_streams);
        const EstimatorResult c_min = conditional_e2e_capacity(sc, l_s, l_d, psi_s, psi_d, n, seed, opt);
        const OutageEstimate p = conditional_outage(sc, l_s, l_d, psi_s, psi_d, n, seed, opt);
        const double c_e2e = std::min(c_su.mean, c_du.mean);

        ls[static_cast<std::size_t>(i)] = l_s;
        csu[static_cast<std::size_t>(i)] = c_su.mean;
        cdu[static_cast<std::size_t>(i)] = c_du.mean;
        ce2e[static_cast<std::size_t>(i)] = c_e2e;
        rec.rows.push_back({l_sc, l_s, l_d, psi_s, psi_d, c_su.mean, c_su.std_error, c_du.mean,
                            c_du.std_error, c_e2e, c_min.mean, c_min.std_error, p.probability});
    }

    // Hop-capacity crossing (linear interpolation in L_s) and the argmax of
    // the end-to-end curve, both reported for cross-checking each other.
    long cross_i = -1;
    double cross_ls = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i + 1 < points; ++i)
    {
        const double d0 = csu[static_cast<std::size_t>(i)] - cdu[static_cast<std::size_t>(i)];
        const double d1 = csu[static_cast<std::size_t>(i) + 1] - cdu[static_cast<std::size_t>(i) + 1];
        if ((d0 >= 0.0 && d1 < 0.0) || (d0 <= 0.0 && d1 > 0.0))
        {
            cross_i = i;
            const double t = d0 / (d0 - d1);
            cross_ls = ls[static_cast<std::size_t>(i)] +
                       t * (ls[static_cast<std::size_t>(i) + 1] - ls[static_cast<std::size_t>(i)]);
            break;
        }
    }
    long best_i = 0;
    for (int i = 1; i < points; ++i)
        if (ce2e[static_cast<std::size_t>(i)] > ce2e[static_cast<std::size_t>(best_i)])
            best_i = i;

    rec.summary["crossing_index"] = cross_i;
    rec.summary["crossing_l_s_m"] = cross_ls;
    rec.summary["argmax_index"] = best_i;
    rec.summary["argmax_l_s_m"] = ls[static_cast<std::size_t>(best_i)];
    rec.summary["argmax_c_e2e"] = ce2e[static_cast<std::size_t>(best_i)];
}

void run_sweep_theta(const ScenarioConfig &cfg, ResultRecord &rec)
{
    const RelayScenario sc = cfg.scenario();
    const McOptions opt = cfg.mc_options();
    const PathCapacityCurve curve = e2e_avg_capacity(sc, cfg.montecarlo.path_points,
                                                     cfg.montecarlo.samples, cfg.montecarlo.seed, opt);

    rec.columns = {"theta_rad", "l_s_m", "l_d_m",  "psi_s_rad", "psi_d_rad", "dls_dtheta_m_per_rad",
                   "c_su",      "se_su", "c_du",   "se_du",     "c_e2e",     "c_e2e_sample_min"};
    const double r = 0.5 * sc.geometry.l_u1_m;
    for (std::size_t j = 0; j < curve.points.size(); ++j)
    {
        const PathPoint &pt = curve.points[j];
        // d L_s / d theta, from the closed-form link length.
        const double dls = -sc.geometry.l_sc_m * r * std::sin(pt.theta_r1_rad) / pt.l_s_m;
        rec.rows.push_back({pt.theta_r1_rad, pt.l_s_m, pt.l_d_m, pt.psi_s_rad, pt.psi_d_rad, dls,
                            curve.c_su[j], curve.se_su[j], curve.c_du[j], curve.se_du[j],
                            std::min(curve.c_su[j], curve.c_du[j]), curve.sample_min_mean[j]});
    }
    rec.summary["c_e2e_path_avg"] = curve.min_of_averages.mean;
    rec.summary["c_e2e_path_avg_se"] = curve.min_of_averages.std_error;
    rec.summary["c_e2e_path_avg_sample_min"] = curve.avg_of_min;
    rec.summary["path_points"] = cfg.montecarlo.path_points;
}

void run_outage_map(const ScenarioConfig &cfg, ResultRecord &rec)
{
    const RelayScenario sc = cfg.scenario();
    const McOptions opt = cfg.mc_options();
    const std::uint64_t n = cfg.montecarlo.samples;
    const std::uint64_t seed = cfg.montecarlo.seed;
    const double h_u = sc.geometry.h_u_m;

    const std::vector<PathPoint> pts = path_profile(sc.geometry, cfg.montecarlo.path_points);
    const std::vector<double> g_su = sample_hop_gains(sc.hop_su, n, seed, su_streams, opt);
    const std::vector<double> g_du = sample_hop_gains(sc.hop_du, n, seed, du_streams, opt);
    std::vector<double> s_su = g_su, s_du = g_du;
    std::sort(s_su.begin(), s_su.end());
    std::sort(s_du.begin(), s_du.end());

    rec.columns = {"theta_rad", "l_s_m", "l_d_m", "psi_s_rad", "psi_d_rad",
                   "p_out_su",  "p_out_du", "p_out_e2e"};
    double worst = -1.0, worst_theta = 0.0;
    for (const PathPoint &pt : pts)
    {
        const double p_su = hop_outage_from_sorted_gains(sc.hop_su, s_su, pt.l_s_m, h_u, sc.gamma_th);
        const double p_du = hop_outage_from_sorted_gains(sc.hop_du, s_du, pt.l_d_m, h_u, sc.gamma_th);
        const double amp_s = sc.hop_su.tx_power_w / sc.hop_su.noise_power_w *
                             hop_channel_gain(sc.hop_su, pt.l_s_m, pt.psi_s_rad);
        const double amp_d = sc.hop_du.tx_power_w / sc.hop_du.noise_power_w *
                             hop_channel_gain(sc.hop_du, pt.l_d_m, pt.psi_d_rad);
        std::uint64_t fails = 0;
        for (std::size_t i = 0; i < g_su.size(); ++i)
            if (e2e_snr(amp_s * g_su[i], amp_d * g_du[i]) < sc.gamma_th)
                ++fails;
        const double p_e2e = static_cast<double>(fails) / static_cast<double>(n);
        if (p_e2e > worst)
        {
            worst = p_e2e;
            worst_theta = pt.theta_r1_rad;
        }
        rec.rows.push_back({pt.theta_r1_rad, pt.l_s_m, pt.l_d_m, pt.psi_s_rad, pt.psi_d_rad, p_su,
                            p_du, p_e2e});
    }
    rec.summary["worst_p_out"] = worst;
    rec.summary["worst_theta_rad"] = worst_theta;
    rec.summary["p_out_tr"] = sc.p_out_tr;
    rec.summary["meets_target"] = worst < sc.p_out_tr;
}

void run_max_length(const ScenarioConfig &cfg, ResultRecord &rec)
{
    const RelayScenario sc = cfg.scenario();
    const McOptions opt = cfg.mc_options();
    const std::uint64_t n = cfg.montecarlo.samples;
    const std::uint64_t seed = cfg.montecarlo.seed;
    const PathGeometry &g = sc.geometry;
    const double h_u = g.h_u_m;
    const double l_hi = 4.0 * (g.l_sd_m + g.l_u1_m) + 10.0 * h_u;

    const double l_s_max = max_link_length(sc.hop_su, h_u, sc.gamma_th, sc.p_out_tr, h_u, l_hi, n,
                                           seed, opt, su_streams);
    const double l_d_max = max_link_length(sc.hop_du, h_u, sc.gamma_th, sc.p_out_tr, h_u, l_hi, n,
                                           seed, opt, du_streams);

    rec.columns = {"hop", "l_max_m", "p_out_target", "gamma_th_db"};
    const double g_db = linear_to_db(sc.gamma_th);
    rec.rows.push_back({std::string("su"), l_s_max, sc.p_out_tr, g_db});
    rec.rows.push_back({std::string("du"), l_d_max, sc.p_out_tr, g_db});

    // Accepted placement interval at this altitude: the farthest path points
    // (theta = 0 for the source hop, theta = pi for the destination hop) must
    // stay within the per-hop maximum lengths.
    const double r = 0.5 * g.l_u1_m;
    const double horiz_s = std::sqrt(std::max(l_s_max * l_s_max - h_u * h_u, 0.0));
    const double horiz_d = std::sqrt(std::max(l_d_max * l_d_max - h_u * h_u, 0.0));
    const double upper = horiz_s - r;
    const double lower = g.l_sd_m - (horiz_d - r);
    rec.summary["l_s_max_m"] = l_s_max;
    rec.summary["l_d_max_m"] = l_d_max;
    rec.summary["l_sc_accept_min_m"] = lower;
    rec.summary["l_sc_accept_max_m"] = upper;
    rec.summary["accept_interval_nonempty"] = lower <= upper;
    rec.summary["h_u_min_m"] = min_height(g);
}

// Returns the process exit code (0 or 3: an empty feasible set is reported,
// not thrown).
int run_optimize(const ScenarioConfig &cfg, ResultRecord &rec)
{
    const DesignSpace space = cfg.design_space();
    const OptimizeBudget budget = cfg.optimize_budget();
    const McOptions opt = cfg.mc_options();
    rec.samples = budget.n_samples;

    const OptimizeReport report = optimize(space, cfg.scenario(), budget, cfg.montecarlo.seed, opt);

    rec.columns = {"rank", "status", "n_sx",  "n_sy",  "n_dx",  "n_dy",
                   "n_usx", "n_usy", "n_udx", "n_udy", "h_u_m", "l_sc_m",
                   "worst_outage", "c_e2e", "se_c_e2e", "n_total", "reason"};
    long rank = 0;
    for (const DesignPoint &p : report.ranked)
    {
        ++rank;
        rec.rows.push_back({rank, std::string(p.feasible ? "feasible" : "infeasible"),
                            static_cast<long long>(p.n_sx), static_cast<long long>(p.n_sy),
                            static_cast<long long>(p.n_dx), static_cast<long long>(p.n_dy),
                            static_cast<long long>(p.n_usx), static_cast<long long>(p.n_usy),
                            static_cast<long long>(p.n_udx), static_cast<long long>(p.n_udy),
                            p.h_u_m, p.l_sc_m, p.worst_outage, p.avg_capacity.mean,
                            p.avg_capacity.std_error, static_cast<long long>(p.n_total()),
                            p.reason});
    }
    for (const DesignPoint &p : report.pruned)
        rec.rows.push_back({0LL, std::string("pruned"), static_cast<long long>(p.n_sx),
                            static_cast<long long>(p.n_sy), static_cast<long long>(p.n_dx),
                            static_cast<long long>(p.n_dy), static_cast<long long>(p.n_usx),
                            static_cast<long long>(p.n_usy), static_cast<long long>(p.n_udx),
                            static_cast<long long>(p.n_udy), p.h_u_m, p.l_sc_m, p.worst_outage,
                            p.avg_capacity.mean, p.avg_capacity.std_error,
                            static_cast<long long>(p.n_total()), p.reason});

    std::size_t n_feasible = 0;
    for (const DesignPoint &p : report.ranked)
        if (p.feasible)
            ++n_feasible;
    rec.summary["n_evaluated"] = report.ranked.size();
    rec.summary["n_pruned"] = report.pruned.size();
    rec.summary["n_feasible"] = n_feasible;
    rec.summary["violation_counts"] = report.violation_counts;
    if (report.best_index)
    {
        const DesignPoint &b = report.ranked[*report.best_index];
        rec.summary["best"] = {{"n_sx", b.n_sx},   {"n_sy", b.n_sy},   {"n_dx", b.n_dx},
                               {"n_dy", b.n_dy},   {"n_usx", b.n_usx}, {"n_usy", b.n_usy},
                               {"n_udx", b.n_udx}, {"n_udy", b.n_udy}, {"h_u_m", b.h_u_m},
                               {"l_sc_m", b.l_sc_m}, {"c_e2e", b.avg_capacity.mean},
                               {"worst_outage", b.worst_outage}};
        return 0;
    }
    rec.summary["best"] = nullptr;
    return 3;
}

// ---------------------------------------------------------------- plumbing

void emit_error(const std::string &type, const std::string &message, int exit_code,
                const std::string &key = {})
{
    nlohmann::json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    j["error"]["exit_code"] = exit_code;
    if (!key.empty())
        j["error"]["key"] = key;
    std::cerr << j.dump() << "\n";
}

int dispatch(const std::string &name, const CliArgs &args)
{
    const ScenarioConfig cfg = effective_config(args);

    ResultRecord rec;
    rec.command = name;
    rec.hash = config_hash(cfg);
    rec.seed = cfg.montecarlo.seed;
    rec.samples = cfg.montecarlo.samples;

    int code = 0;
    if (name == "atmos-table")
        run_atmos_table(cfg, rec);
    else if (name == "sweep-ls")
        run_sweep_ls(cfg, rec);
    else if (name == "sweep-theta")
        run_sweep_theta(cfg, rec);
    else if (name == "outage-map")
        run_outage_map(cfg, rec);
    else if (name == "max-length")
        run_max_length(cfg, rec);
    else if (name == "optimize")
        code = run_optimize(cfg, rec);

    const std::string out = args.out_path.empty() ? default_out(name) : args.out_path;
    write_table_file(rec, out);
    write_metadata_file(rec, cfg, cfg.montecarlo.threads, out + ".meta.json");

    std::cout << name << ": " << rec.rows.size() << " rows -> " << out << " (config "
              << rec.hash << ", seed " << rec.seed << ")\n";
    if (code == 3)
        emit_error("infeasible", "no design point satisfies all constraints", 3);
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nfplink - link-level simulator for UAV-relayed mmWave backhaul"};
    app.require_subcommand(1);

    CliArgs args;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"atmos-table", "Specific attenuation vs carrier frequency"},
        {"sweep-ls", "Conditional capacities and outage vs relay placement"},
        {"sweep-theta", "Capacity along the circular flight path"},
        {"outage-map", "Outage probabilities along the flight path"},
        {"max-length", "Per-hop maximum link lengths and accepted placement interval"},
        {"optimize", "Constrained grid search over array sizes and placement"}};
    for (const auto &[cname, desc] : commands)
    {
        CLI::App *s = app.add_subcommand(cname, desc);
        s->add_option("--config", args.config_path, "JSON configuration file");
        s->add_option("--seed", args.seed, "RNG seed (overrides config)");
        s->add_option("--samples", args.samples, "Monte Carlo samples per point (overrides config)");
        s->add_option("--out", args.out_path, "Output table path (default: $NFPLINK_OUT_DIR or .)");
        s->add_option("--threads", args.threads, "Worker threads, 0 = auto (overrides config)");
        s->add_flag("--strict-truncation", args.strict_truncation,
                    "Count out-of-range misalignment draws as zero gain instead of redrawing");
        s->add_flag("--no-prune", args.no_prune, "Disable the N_uqy >= N_uqx search heuristic");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App *sub = app.get_subcommands().front();
    args.seed_given = sub->count("--seed") > 0;
    args.samples_given = sub->count("--samples") > 0;
    args.threads_given = sub->count("--threads") > 0;

    try
    {
        return dispatch(sub->get_name(), args);
    }
    catch (const validation_error &e)
    {
        emit_error("validation", e.what(), 2, e.key_path());
        return 2;
    }
    catch (const infeasible_error &e)
    {
        emit_error("infeasible", e.what(), 3);
        return 3;
    }
    catch (const domain_error &e)
    {
        emit_error("numerical", e.what(), 4);
        return 4;
    }
    catch (const std::exception &e)
    {
        emit_error("numerical", e.what(), 4);
        return 4;
    }
}

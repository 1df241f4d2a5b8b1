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

#ifndef NFPLINK_OPTIMIZER_HPP
#define NFPLINK_OPTIMIZER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "montecarlo.hpp"

namespace nfplink
{

// Constrained grid search: maximize the path-averaged end-to-end capacity
// over array element counts, relay altitude and circle-center placement,
// subject to the worst-case outage, minimum-height and accepted-interval
// constraints. Exhaustive over the grids, with two documented prunes:
//  (a) when sigma_uqy < sigma_uqx, candidates with N_uqy < N_uqx are skipped
//      (heuristic, opt-out via DesignSpace::prune_uav_y_ge_x);
//  (b) placements beyond the per-candidate accepted L_sc interval are skipped
//      by monotonicity of the extreme link lengths in L_sc.
// All pruned points are logged with the rule that removed them.

struct DesignSpace
{
    // Integer grids for the element counts of the four arrays (per axis).
    std::vector<int> n_sx{12, 14, 16, 18}, n_sy{12, 14, 16, 18}; // source terminal array
    std::vector<int> n_dx{12, 14, 16, 18}, n_dy{12, 14, 16, 18}; // destination terminal array
    std::vector<int> n_usx{6, 8, 10, 12, 14, 16, 18}; // relay array facing the source
    std::vector<int> n_usy{6, 8, 10, 12, 14, 16, 18};
    std::vector<int> n_udx{6, 8, 10, 12, 14, 16, 18}; // relay array facing the destination
    std::vector<int> n_udy{6, 8, 10, 12, 14, 16, 18};
    std::vector<double> h_u_m{3000.0};
    std::vector<double> l_sc_m{9200.0,  9600.0,  10000.0, 10400.0, 10800.0, 11200.0,
                               11600.0, 12000.0, 12400.0, 12800.0, 13200.0, 13600.0,
                               14000.0, 14400.0, 14800.0, 15200.0};

    // Fly the same element counts on both relay arrays (the grids n_udx and
    // n_udy are then ignored): matches the single N_uq notation the design
    // problem is usually written in.
    bool tie_uav_arrays = true;

    // Use one element count for all ground-array axes (the n_sx grid; the
    // n_sy/n_dx/n_dy grids are then ignored).
    bool tie_ground_arrays = true;

    // Heuristic prune (a); sound whenever the y-axis misalignment is no
    // worse than the x-axis one.
    bool prune_uav_y_ge_x = true;

    void validate() const
    {
        const auto grids_ok = !n_sx.empty() && !n_usx.empty() && !n_usy.empty() &&
                              (tie_ground_arrays ||
                               (!n_sy.empty() && !n_dx.empty() && !n_dy.empty())) &&
                              (tie_uav_arrays || (!n_udx.empty() && !n_udy.empty())) &&
                              !h_u_m.empty() && !l_sc_m.empty();
        if (!grids_ok)
            throw validation_error("design_space", "all search grids must be non-empty");
        for (const auto *g : {&n_sx, &n_sy, &n_dx, &n_dy, &n_usx, &n_usy, &n_udx, &n_udy})
            for (int v : *g)
                if (v < 1)
                    throw validation_error("design_space", "element counts must be >= 1");
    }
};

struct DesignPoint
{
    int n_sx = 0, n_sy = 0, n_dx = 0, n_dy = 0;
    int n_usx = 0, n_usy = 0, n_udx = 0, n_udy = 0;
    double h_u_m = 0.0;
    double l_sc_m = 0.0;
    bool feasible = false;
    double worst_outage = 1.0;
    EstimatorResult avg_capacity{};
    std::string reason; // violated constraint, or "prune:<rule>"; empty when feasible

    long n_total() const
    {
        return static_cast<long>(n_sx) * n_sy + static_cast<long>(n_dx) * n_dy +
               static_cast<long>(n_usx) * n_usy + static_cast<long>(n_udx) * n_udy;
    }
    auto lex_key() const
    {
        return std::tuple(n_usx, n_usy, n_udx, n_udy, n_sx, n_sy, n_dx, n_dy, l_sc_m, h_u_m);
    }
};

struct FeasibilityResult
{
    bool feasible = false;
    double worst_outage = 1.0;
    std::string violated; // empty when feasible
    double l_s_max_m = 0.0;
    double l_d_max_m = 0.0;
};

namespace detail
{
// Upper bisection bracket for the max-length search: far beyond any
// placement the grids can produce, so "no bracket" only means the hop fails
// its outage target even at the shortest possible length.
inline double max_length_bracket(const PathGeometry &g)
{
    return 4.0 * (g.l_sd_m + g.l_u1_m) + 10.0 * g.h_u_m;
}
} // namespace detail

// Checks all constraints of one assembled scenario: minimum height,
// accepted-interval conditions via the per-hop maximum lengths, and the
// worst-case path outage (recorded as the constraint value).
inline FeasibilityResult feasibility_check(const RelayScenario &sc, std::uint64_t n,
                                           std::uint64_t seed, const McOptions &opt = {})
{
    sc.validate();
    FeasibilityResult r;

    const double h_min = min_height(sc.geometry);
    if (sc.geometry.h_u_m < h_min)
    {
        r.violated = "h_u below minimum height";
        return r;
    }

    const double l_hi = detail::max_length_bracket(sc.geometry);
    const double h_u = sc.geometry.h_u_m;

    auto hop_max_len = [&](const HopConfig &hop, const HopStreams &streams, double &out_max,
                           const char *label) {
        try
        {
            std::vector<double> gains = sample_hop_gains(hop, n, seed, streams, opt);
            std::sort(gains.begin(), gains.end());
            out_max = max_length_from_sorted_gains(hop, gains, h_u, sc.gamma_th, sc.p_out_tr, h_u,
                                                   l_hi);
            return true;
        }
        catch (const infeasible_error &)
        {
            r.violated = std::string(label) + " outage exceeds target at every length";
            return false;
        }
    };

    if (!hop_max_len(sc.hop_su, su_streams, r.l_s_max_m, "source hop"))
        return r;
    if (!hop_max_len(sc.hop_du, du_streams, r.l_d_max_m, "destination hop"))
        return r;

    const auto [l_s_far, l_d_near] = link_lengths(0.0, sc.geometry);
    const auto [l_s_near, l_d_far] = link_lengths(pi, sc.geometry);
    (void)l_d_near;
    (void)l_s_near;
    if (l_s_far > r.l_s_max_m)
    {
        r.violated = "max path L_s exceeds L_s_max";
        return r;
    }
    if (l_d_far > r.l_d_max_m)
    {
        r.violated = "max path L_d exceeds L_d_max";
        return r;
    }

    const WorstCasePathOutage w = worst_case_path_outage(sc, n, seed, opt);
    r.worst_outage = w.worst.probability;
    if (!(r.worst_outage < sc.p_out_tr))
    {
        r.violated = "worst-case path outage at or above target";
        return r;
    }

    r.feasible = true;
    return r;
}

struct OptimizeBudget
{
    std::uint64_t n_samples = 100000;
    int path_points = 61; // theta grid for the capacity objective
};

struct OptimizeReport
{
    std::vector<DesignPoint> ranked;  // feasible first (best to worst), then infeasible
    std::vector<DesignPoint> pruned;  // skipped points, reason = "prune:<rule>"
    std::optional<std::size_t> best_index; // into ranked; empty if no feasible point
    std::map<std::string, std::size_t> violation_counts; // per-constraint statistics
};

namespace detail
{

// One array combo of the search: the eight element counts.
struct ArrayCombo
{
    int n_sx, n_sy, n_dx, n_dy, n_usx, n_usy, n_udx, n_udy;
};

inline RelayScenario scenario_for(const RelayScenario &base, const ArrayCombo &c, double h_u,
                                  double l_sc)
{
    RelayScenario sc = base;
    sc.geometry.h_u_m = h_u;
    sc.geometry.l_sc_m = l_sc;
    sc.hop_su.ground_array.n_x = c.n_sx;
    sc.hop_su.ground_array.n_y = c.n_sy;
    sc.hop_su.uav_array.n_x = c.n_usx;
    sc.hop_su.uav_array.n_y = c.n_usy;
    sc.hop_du.uav_array.n_x = c.n_udx;
    sc.hop_du.uav_array.n_y = c.n_udy;
    sc.hop_du.ground_array.n_x = c.n_dx;
    sc.hop_du.ground_array.n_y = c.n_dy;
    return sc;
}

inline DesignPoint point_for(const ArrayCombo &c, double h_u, double l_sc)
{
    DesignPoint p;
    p.n_sx = c.n_sx;
    p.n_sy = c.n_sy;
    p.n_dx = c.n_dx;
    p.n_dy = c.n_dy;
    p.n_usx = c.n_usx;
    p.n_usy = c.n_usy;
    p.n_udx = c.n_udx;
    p.n_udy = c.n_udy;
    p.h_u_m = h_u;
    p.l_sc_m = l_sc;
    return p;
}

// Result of evaluating one (combo, h_u) group across the whole l_sc grid.
struct GroupResult
{
    std::vector<DesignPoint> evaluated;
    std::vector<DesignPoint> pruned;
};

// Evaluates every placement of one (combo, altitude) pair. The hop gain
// samples depend only on the arrays, so they are drawn and sorted once; the
// accepted L_sc interval then follows from the two max lengths by
// monotonicity, and placements outside it are pruned without evaluation.
inline GroupResult evaluate_group(const RelayScenario &base, const ArrayCombo &combo, double h_u,
                                  const std::vector<double> &l_sc_grid, const OptimizeBudget &budget,
                                  std::uint64_t seed, const McOptions &opt)
{
    GroupResult out;
    McOptions local = opt;
    local.threads = 1; // parallelism lives at the group level

    // Arrays (and therefore gain samples) are placement-independent.
    RelayScenario proto = scenario_for(base, combo, h_u, l_sc_grid.front());
    std::vector<double> gains_su = sample_hop_gains(proto.hop_su, budget.n_samples, seed, su_streams, local);
    std::vector<double> gains_du = sample_hop_gains(proto.hop_du, budget.n_samples, seed, du_streams, local);
    std::vector<double> sorted_su = gains_su, sorted_du = gains_du;
    std::sort(sorted_su.begin(), sorted_su.end());
    std::sort(sorted_du.begin(), sorted_du.end());

    const double l_hi = max_length_bracket(proto.geometry);
    double l_s_max = 0.0, l_d_max = 0.0;
    std::string hop_fail;
    try
    {
        l_s_max = max_length_from_sorted_gains(proto.hop_su, sorted_su, h_u, proto.gamma_th,
                                               proto.p_out_tr, h_u, l_hi);
    }
    catch (const infeasible_error &)
    {
        hop_fail = "source hop outage exceeds target at every length";
    }
    if (hop_fail.empty())
    {
        try
        {
            l_d_max = max_length_from_sorted_gains(proto.hop_du, sorted_du, h_u, proto.gamma_th,
                                                   proto.p_out_tr, h_u, l_hi);
        }
        catch (const infeasible_error &)
        {
            hop_fail = "destination hop outage exceeds target at every length";
        }
    }

    for (double l_sc : l_sc_grid)
    {
        DesignPoint p = point_for(combo, h_u, l_sc);
        if (!hop_fail.empty())
        {
            p.reason = hop_fail;
            out.evaluated.push_back(std::move(p));
            continue;
        }

        RelayScenario sc = scenario_for(base, combo, h_u, l_sc);
        if (h_u < min_height(sc.geometry))
        {
            p.reason = "h_u below minimum height";
            out.evaluated.push_back(std::move(p));
            continue;
        }

        // Accepted-interval conditions at the path extremes; the extreme
        // lengths are monotone in l_sc, so failures here prune by dominance.
        const auto [l_s_far, l_d_near] = link_lengths(0.0, sc.geometry);
        const auto [l_s_near, l_d_far] = link_lengths(pi, sc.geometry);
        (void)l_d_near;
        (void)l_s_near;
        if (l_s_far > l_s_max)
        {
            p.reason = "prune:l_sc dominated (L_s beyond L_s_max)";
            out.pruned.push_back(std::move(p));
            continue;
        }
        if (l_d_far > l_d_max)
        {
            p.reason = "prune:l_sc dominated (L_d beyond L_d_max)";
            out.pruned.push_back(std::move(p));
            continue;
        }

        // Worst-case joint outage at the two path extremes, reusing the
        // common gain samples (pairing preserved: both vectors are indexed
        // by sample).
        const auto joint_outage = [&](double theta) {
            const auto [ls, ld] = link_lengths(theta, sc.geometry);
            const double amp_s = sc.hop_su.tx_power_w / sc.hop_su.noise_power_w *
                                 hop_channel_gain(sc.hop_su, ls, elevation_angle(ls, h_u));
            const double amp_d = sc.hop_du.tx_power_w / sc.hop_du.noise_power_w *
                                 hop_channel_gain(sc.hop_du, ld, elevation_angle(ld, h_u));
            std::uint64_t fails = 0;
            for (std::size_t i = 0; i < gains_su.size(); ++i)
                if (e2e_snr(amp_s * gains_su[i], amp_d * gains_du[i]) < sc.gamma_th)
                    ++fails;
            return static_cast<double>(fails) / static_cast<double>(gains_su.size());
        };
        p.worst_outage = std::max(joint_outage(0.0), joint_outage(pi));
        if (!(p.worst_outage < sc.p_out_tr))
        {
            p.reason = "worst-case path outage at or above target";
            out.evaluated.push_back(std::move(p));
            continue;
        }

        const PathCapacityCurve curve =
            e2e_avg_capacity(sc, budget.path_points, budget.n_samples, seed, local);
        p.avg_capacity = curve.min_of_averages;
        p.feasible = true;
        out.evaluated.push_back(std::move(p));
    }
    return out;
}

} // namespace detail

// Exhaustive constrained grid search. Returns every evaluated point (ranked:
// feasible by descending capacity, ties by smaller total element count then
// lexicographic; infeasible after), the pruned points with their rules, and
// per-constraint violation statistics. An empty feasible set is a value
// (best_index empty), not an error.
inline OptimizeReport optimize(const DesignSpace &space, const RelayScenario &base,
                               const OptimizeBudget &budget, std::uint64_t seed,
                               const McOptions &opt = {})
{
    space.validate();
    base.validate();
    if (budget.n_samples < 100)
        throw domain_error("optimization needs n >= 100 samples per point");

    // Enumerate array combos (deterministic order), applying the ties and
    // the heuristic UAV prune.
    std::vector<std::array<int, 4>> ground_combos;
    if (space.tie_ground_arrays)
        for (int g : space.n_sx)
            ground_combos.push_back({g, g, g, g});
    else
        for (int sx : space.n_sx)
            for (int sy : space.n_sy)
                for (int dx : space.n_dx)
                    for (int dy : space.n_dy)
                        ground_combos.push_back({sx, sy, dx, dy});

    std::vector<std::array<int, 4>> uav_combos;
    if (space.tie_uav_arrays)
        for (int ux : space.n_usx)
            for (int uy : space.n_usy)
                uav_combos.push_back({ux, uy, ux, uy});
    else
        for (int usx : space.n_usx)
            for (int usy : space.n_usy)
                for (int udx : space.n_udx)
                    for (int udy : space.n_udy)
                        uav_combos.push_back({usx, usy, udx, udy});

    std::vector<detail::ArrayCombo> combos;
    std::vector<DesignPoint> pruned;
    const bool sigma_ordered = base.hop_su.uav_stats.sigma_y_rad < base.hop_su.uav_stats.sigma_x_rad;
    const bool apply_uav_prune = space.prune_uav_y_ge_x && sigma_ordered;

    for (const auto &g : ground_combos)
        for (const auto &u : uav_combos)
        {
            detail::ArrayCombo c{g[0], g[1], g[2], g[3], u[0], u[1], u[2], u[3]};
            if (apply_uav_prune && (u[1] < u[0] || u[3] < u[2]))
            {
                for (double h_u : space.h_u_m)
                    for (double l_sc : space.l_sc_m)
                    {
                        DesignPoint p = detail::point_for(c, h_u, l_sc);
                        p.reason = "prune:n_uqy >= n_uqx heuristic";
                        pruned.push_back(std::move(p));
                    }
                continue;
            }
            combos.push_back(c);
        }

    // Evaluate (combo, altitude) groups in a work pool; group results are
    // merged in enumeration order, so the report does not depend on the
    // thread count.
    struct Task
    {
        detail::ArrayCombo combo;
        double h_u;
    };
    std::vector<Task> tasks;
    for (const auto &c : combos)
        for (double h_u : space.h_u_m)
            tasks.push_back({c, h_u});

    std::vector<detail::GroupResult> results(tasks.size());
    std::atomic<std::size_t> ticket{0};
    const int n_threads = detail::resolve_threads(opt.threads);
    auto worker = [&]() {
        for (;;)
        {
            const std::size_t t = ticket.fetch_add(1, std::memory_order_relaxed);
            if (t >= tasks.size())
                return;
            results[t] = detail::evaluate_group(base, tasks[t].combo, tasks[t].h_u, space.l_sc_m,
                                                budget, seed, opt);
        }
    };
    if (n_threads <= 1 || tasks.size() <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        const std::size_t n_pool = std::min<std::size_t>(static_cast<std::size_t>(n_threads), tasks.size());
        pool.reserve(n_pool);
        for (std::size_t t = 0; t < n_pool; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    OptimizeReport report;
    report.pruned = std::move(pruned);
    for (auto &gr : results)
    {
        for (auto &p : gr.evaluated)
            report.ranked.push_back(std::move(p));
        for (auto &p : gr.pruned)
            report.pruned.push_back(std::move(p));
    }

    for (const auto &p : report.ranked)
        if (!p.feasible)
            ++report.violation_counts[p.reason];
    for (const auto &p : report.pruned)
        ++report.violation_counts[p.reason];

    // Rank: feasible first by (capacity desc, total elements asc, lex asc);
    // infeasible after, in a stable deterministic order.
    std::sort(report.ranked.begin(), report.ranked.end(), [](const DesignPoint &a, const DesignPoint &b) {
        if (a.feasible != b.feasible)
            return a.feasible;
        if (a.feasible)
        {
            if (a.avg_capacity.mean != b.avg_capacity.mean)
                return a.avg_capacity.mean > b.avg_capacity.mean;
            if (a.n_total() != b.n_total())
                return a.n_total() < b.n_total();
        }
        return a.lex_key() < b.lex_key();
    });

    if (!report.ranked.empty() && report.ranked.front().feasible)
        report.best_index = 0;
    return report;
}

} // namespace nfplink

#endif // NFPLINK_OPTIMIZER_HPP

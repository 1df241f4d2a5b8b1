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

#ifndef NFPLINK_MONTECARLO_HPP
#define NFPLINK_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "antenna.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "link.hpp"
#include "philox.hpp"

namespace nfplink
{

// Monte Carlo estimators for conditional hop capacity, path-averaged
// end-to-end capacity, conditional outage, worst-case path outage and
// maximum feasible link length.
//
// Randomness contract: the variates consumed by sample i of stream s depend
// only on (seed, s, i). Partial sums are accumulated per fixed-size block of
// sample indices and reduced in block order, so every estimate is
// bit-identical for any worker thread count. Streams separate the four
// antenna-array roles of the two-hop scenario.

enum class TruncationPolicy
{
    redraw,     // re-draw per-axis angles with |theta| >= pi/2 (default)
    strict_zero // such samples contribute zero capacity / certain outage
};

struct McOptions
{
    int threads = 0; // 0 = hardware concurrency
    TruncationPolicy truncation = TruncationPolicy::redraw;
    CapacityUnit unit = CapacityUnit::bits_per_s_hz;
};

struct EstimatorResult
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct OutageEstimate
{
    double probability = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t n_failures = 0;
    std::uint64_t seed = 0;
    double gamma_th = 0.0;
};

// Stream ids of the four array roles. A hop estimate uses the pair of its
// own arrays; joint end-to-end estimates use all four.
struct HopStreams
{
    std::uint32_t ground;
    std::uint32_t uav;
};
inline constexpr HopStreams su_streams{0u, 1u}; // source terminal array, relay array facing it
inline constexpr HopStreams du_streams{3u, 2u}; // destination terminal array, relay array facing it

// The full two-hop relay scenario consumed by the joint estimators.
struct RelayScenario
{
    PathGeometry geometry;
    HopConfig hop_su; // source -> relay
    HopConfig hop_du; // relay -> destination
    double gamma_th = 1.0; // linear end-to-end SNR threshold
    double p_out_tr = 1e-3; // tolerable outage probability

    void validate() const
    {
        geometry.validate();
        hop_su.validate();
        hop_du.validate();
        if (!(gamma_th > 0.0))
            throw validation_error("gamma_th", "SNR threshold must be > 0");
        if (!(p_out_tr > 0.0) || !(p_out_tr <= 1.0))
            throw validation_error("p_out_tr", "outage target must lie in (0, 1]");
    }
};

struct MisalignmentDraw
{
    PointingSample pointing;
    bool truncated; // only set under TruncationPolicy::strict_zero
};

// Draws the per-axis Gaussian tilts of one array. Angles at or beyond pi/2
// are re-drawn under the default policy (negligible probability for the
// degree-scale sigmas this model targets) or flagged under strict_zero.
inline MisalignmentDraw sample_misalignment(const MisalignmentStats &st, sample_rng &rng,
                                            TruncationPolicy pol = TruncationPolicy::redraw)
{
    for (;;)
    {
        const double tx = st.mu_x_rad + st.sigma_x_rad * rng.normal();
        const double ty = st.mu_y_rad + st.sigma_y_rad * rng.normal();
        if (std::fabs(tx) < pi / 2.0 && std::fabs(ty) < pi / 2.0)
            return {pointing_from_axes(tx, ty), false};
        if (pol == TruncationPolicy::strict_zero)
            return {PointingSample{tx, ty, 0.0, 0.0}, true};
    }
}

namespace detail
{

inline constexpr std::uint64_t mc_block_size = 4096;

inline int resolve_threads(int threads)
{
    if (threads > 0)
        return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs f(i, acc) for all sample indices i in [0, n), where acc is a K-double
// accumulator belonging to i's block. Blocks are distributed to threads via
// an atomic ticket, each block is filled in index order, and the block
// partials are reduced sequentially - the result is a pure function of
// (n, K, f), independent of scheduling.
template <typename F>
std::vector<double> parallel_block_sum(std::uint64_t n, std::size_t k, int threads, F &&f)
{
    const std::uint64_t n_blocks = (n + mc_block_size - 1) / mc_block_size;
    std::vector<double> partials(n_blocks * k, 0.0);

    const int n_threads = std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_blocks, 1));
    std::atomic<std::uint64_t> ticket{0};
    auto worker = [&]() {
        for (;;)
        {
            const std::uint64_t b = ticket.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks)
                return;
            double *acc = partials.data() + b * k;
            const std::uint64_t lo = b * mc_block_size;
            const std::uint64_t hi = std::min(n, lo + mc_block_size);
            for (std::uint64_t i = lo; i < hi; ++i)
                f(i, acc);
        }
    };

    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    std::vector<double> total(k, 0.0);
    for (std::uint64_t b = 0; b < n_blocks; ++b)
        for (std::size_t j = 0; j < k; ++j)
            total[j] += partials[b * k + j];
    return total;
}

// Runs f(i) for all i in [0, n) with the same block partition as
// parallel_block_sum; used when outputs go to pre-sized per-index slots.
template <typename F>
void parallel_for_samples(std::uint64_t n, int threads, F &&f)
{
    const std::uint64_t n_blocks = (n + mc_block_size - 1) / mc_block_size;
    const int n_threads = std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_blocks, 1));
    std::atomic<std::uint64_t> ticket{0};
    auto worker = [&]() {
        for (;;)
        {
            const std::uint64_t b = ticket.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks)
                return;
            const std::uint64_t lo = b * mc_block_size;
            const std::uint64_t hi = std::min(n, lo + mc_block_size);
            for (std::uint64_t i = lo; i < hi; ++i)
                f(i);
        }
    };
    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
}

inline double std_error_from_sums(double sum, double sum_sq, std::uint64_t n)
{
    if (n < 2)
        return 0.0;
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    double var = (sum_sq - nn * mean * mean) / (nn - 1.0);
    if (var < 0.0)
        var = 0.0; // rounding guard for degenerate (constant) samples
    return std::sqrt(var / nn);
}

// Composite misalignment gain of one array for sample i of one stream.
inline double sampled_array_gain(const ArrayConfig &a, const MisalignmentStats &st, double k_wave,
                                 std::uint64_t seed, std::uint32_t stream, std::uint64_t i,
                                 TruncationPolicy pol)
{
    sample_rng rng(seed, stream, i);
    const MisalignmentDraw d = sample_misalignment(st, rng, pol);
    return d.truncated ? 0.0 : composite_gain(a, k_wave, d.pointing);
}

// Joint (ground x relay) misalignment gain product of one hop for sample i.
inline double sampled_hop_gain(const HopConfig &hop, const HopStreams &st, std::uint64_t seed,
                               std::uint64_t i, TruncationPolicy pol)
{
    const double k = hop.carrier.k_rad_per_m();
    return sampled_array_gain(hop.ground_array, hop.ground_stats, k, seed, st.ground, i, pol) *
           sampled_array_gain(hop.uav_array, hop.uav_stats, k, seed, st.uav, i, pol);
}

} // namespace detail

// Monte Carlo mean of the instantaneous hop capacity at fixed slant length
// and elevation, over n joint draws of the four misalignment angles.
inline EstimatorResult conditional_hop_capacity(const HopConfig &hop, double l_m, double psi_rad,
                                                std::uint64_t n, std::uint64_t seed,
                                                const McOptions &opt = {},
                                                const HopStreams &streams = su_streams)
{
    if (n < 100)
        throw domain_error("capacity estimation needs n >= 100");
    hop.validate();

    const double amp = hop.tx_power_w / hop.noise_power_w * hop_channel_gain(hop, l_m, psi_rad);
    const double ln2 = std::log(2.0);
    const bool bits = opt.unit == CapacityUnit::bits_per_s_hz;

    const auto sums = detail::parallel_block_sum(
        n, 2, opt.threads, [&](std::uint64_t i, double *acc) {
            const double g = detail::sampled_hop_gain(hop, streams, seed, i, opt.truncation);
            double c = std::log1p(amp * g);
            if (bits)
                c /= ln2;
            acc[0] += c;
            acc[1] += c * c;
        });

    return {sums[0] / static_cast<double>(n), detail::std_error_from_sums(sums[0], sums[1], n), n,
            seed};
}

// Path capacity curve and its trapezoid integral: the conditional capacities
// of both hops on an M-point theta grid, the end-to-end path average taken
// as min of the two conditional means per point (the primary definition) and
// the sample-wise min diagnostic.
struct PathCapacityCurve
{
    std::vector<PathPoint> points;
    std::vector<double> c_su, se_su;          // source-hop conditional capacity per point
    std::vector<double> c_du, se_du;          // destination-hop conditional capacity per point
    std::vector<double> sample_min_mean;      // mean over samples of min(c_su_i, c_du_i)
    EstimatorResult min_of_averages;          // (1/pi) trapezoid of min(c_su, c_du)
    double avg_of_min = 0.0;                  // (1/pi) trapezoid of sample_min_mean
};

// Estimates the path-averaged end-to-end capacity of the scenario. The same
// misalignment draws are shared by every theta grid point (the gains do not
// depend on theta; only the deterministic link budget does), which makes the
// curve smooth in theta and the trapezoid average cheap and stable.
inline PathCapacityCurve e2e_avg_capacity(const RelayScenario &sc, int m_points, std::uint64_t n,
                                          std::uint64_t seed, const McOptions &opt = {})
{
    if (m_points < 2)
        throw domain_error("path average needs at least 2 theta points");
    if (n < 100)
        throw domain_error("capacity estimation needs n >= 100");
    sc.validate();

    PathCapacityCurve out;
    out.points = path_profile(sc.geometry, m_points);
    const std::size_t m = out.points.size();

    // Deterministic per-point link-budget amplitudes gamma = amp * gain.
    std::vector<double> amp_su(m), amp_du(m);
    for (std::size_t j = 0; j < m; ++j)
    {
        const PathPoint &p = out.points[j];
        amp_su[j] = sc.hop_su.tx_power_w / sc.hop_su.noise_power_w *
                    hop_channel_gain(sc.hop_su, p.l_s_m, p.psi_s_rad);
        amp_du[j] = sc.hop_du.tx_power_w / sc.hop_du.noise_power_w *
                    hop_channel_gain(sc.hop_du, p.l_d_m, p.psi_d_rad);
    }

    const double ln2 = std::log(2.0);
    const bool bits = opt.unit == CapacityUnit::bits_per_s_hz;

    // Per theta point: sum c_su, sum c_su^2, sum c_du, sum c_du^2, sum min.
    const std::size_t k_per_point = 5;
    const auto sums = detail::parallel_block_sum(
        n, m * k_per_point, opt.threads, [&](std::uint64_t i, double *acc) {
            const double g_su = detail::sampled_hop_gain(sc.hop_su, su_streams, seed, i, opt.truncation);
            const double g_du = detail::sampled_hop_gain(sc.hop_du, du_streams, seed, i, opt.truncation);
            for (std::size_t j = 0; j < m; ++j)
            {
                double cs = std::log1p(amp_su[j] * g_su);
                double cd = std::log1p(amp_du[j] * g_du);
                if (bits)
                {
                    cs /= ln2;
                    cd /= ln2;
                }
                double *a = acc + j * k_per_point;
                a[0] += cs;
                a[1] += cs * cs;
                a[2] += cd;
                a[3] += cd * cd;
                a[4] += std::min(cs, cd);
            }
        });

    out.c_su.resize(m);
    out.se_su.resize(m);
    out.c_du.resize(m);
    out.se_du.resize(m);
    out.sample_min_mean.resize(m);

    const double nn = static_cast<double>(n);
    double integral = 0.0, integral_se = 0.0, integral_min = 0.0;
    for (std::size_t j = 0; j < m; ++j)
    {
        const double *a = sums.data() + j * k_per_point;
        out.c_su[j] = a[0] / nn;
        out.se_su[j] = detail::std_error_from_sums(a[0], a[1], n);
        out.c_du[j] = a[2] / nn;
        out.se_du[j] = detail::std_error_from_sums(a[2], a[3], n);
        out.sample_min_mean[j] = a[4] / nn;

        // Trapezoid weights on [0, pi], normalized by 1/pi.
        const double d_theta = pi / static_cast<double>(m - 1);
        const double w = ((j == 0 || j == m - 1) ? 0.5 : 1.0) * d_theta / pi;
        const bool su_active = out.c_su[j] <= out.c_du[j];
        integral += w * std::min(out.c_su[j], out.c_du[j]);
        // Draws are shared across points, so per-point errors are strongly
        // correlated; the SE uses the conservative perfectly-correlated sum.
        integral_se += w * (su_active ? out.se_su[j] : out.se_du[j]);
        integral_min += w * out.sample_min_mean[j];
    }

    out.min_of_averages = {integral, integral_se, n, seed};
    out.avg_of_min = integral_min;
    return out;
}

// Joint end-to-end outage at fixed link lengths and elevations: the fraction
// of joint realizations (eight misalignment angles, hops independent) whose
// bottleneck SNR falls below the threshold.
inline OutageEstimate conditional_outage(const RelayScenario &sc, double l_s_m, double l_d_m,
                                         double psi_s_rad, double psi_d_rad, std::uint64_t n,
                                         std::uint64_t seed, const McOptions &opt = {})
{
    if (n == 0)
        throw domain_error("outage estimation needs n >= 1");
    sc.hop_su.validate();
    sc.hop_du.validate();

    const double amp_su = sc.hop_su.tx_power_w / sc.hop_su.noise_power_w *
                          hop_channel_gain(sc.hop_su, l_s_m, psi_s_rad);
    const double amp_du = sc.hop_du.tx_power_w / sc.hop_du.noise_power_w *
                          hop_channel_gain(sc.hop_du, l_d_m, psi_d_rad);

    const auto sums = detail::parallel_block_sum(
        n, 1, opt.threads, [&](std::uint64_t i, double *acc) {
            const double g_su = detail::sampled_hop_gain(sc.hop_su, su_streams, seed, i, opt.truncation);
            const double g_du = detail::sampled_hop_gain(sc.hop_du, du_streams, seed, i, opt.truncation);
            const double gamma = e2e_snr(amp_su * g_su, amp_du * g_du);
            if (gamma < sc.gamma_th)
                acc[0] += 1.0;
        });

    const auto failures = static_cast<std::uint64_t>(sums[0] + 0.5);
    return {static_cast<double>(failures) / static_cast<double>(n), n, failures, seed,
            sc.gamma_th};
}

// Mean instantaneous bottleneck capacity at fixed link lengths and
// elevations: E[log(1 + min(gamma_su, gamma_du))]. This is the
// average-of-minima companion of the minimum-of-averages definition; by
// Jensen-type ordering it never exceeds min of the per-hop conditional
// capacities, and the gap measures how often the bottleneck hop switches.
inline EstimatorResult conditional_e2e_capacity(const RelayScenario &sc, double l_s_m,
                                                double l_d_m, double psi_s_rad, double psi_d_rad,
                                                std::uint64_t n, std::uint64_t seed,
                                                const McOptions &opt = {})
{
    if (n < 100)
        throw domain_error("capacity estimation needs n >= 100");
    sc.hop_su.validate();
    sc.hop_du.validate();

    const double amp_su = sc.hop_su.tx_power_w / sc.hop_su.noise_power_w *
                          hop_channel_gain(sc.hop_su, l_s_m, psi_s_rad);
    const double amp_du = sc.hop_du.tx_power_w / sc.hop_du.noise_power_w *
                          hop_channel_gain(sc.hop_du, l_d_m, psi_d_rad);

    const auto sums = detail::parallel_block_sum(
        n, 2, opt.threads, [&](std::uint64_t i, double *acc) {
            const double g_su = detail::sampled_hop_gain(sc.hop_su, su_streams, seed, i, opt.truncation);
            const double g_du = detail::sampled_hop_gain(sc.hop_du, du_streams, seed, i, opt.truncation);
            const double c = instantaneous_capacity(e2e_snr(amp_su * g_su, amp_du * g_du), opt.unit);
            acc[0] += c;
            acc[1] += c * c;
        });

    return {sums[0] / static_cast<double>(n), detail::std_error_from_sums(sums[0], sums[1], n), n,
            seed};
}

// Worst-case outage along the flight path. The link lengths are extremal at
// theta = 0 (farthest from the source) and theta = pi (farthest from the
// destination), so the path constraint reduces to these two evaluations;
// both use the same random draws so the comparison is noise-free.
struct WorstCasePathOutage
{
    OutageEstimate worst;
    double worst_theta_rad = 0.0;
    OutageEstimate at_theta_0;
    OutageEstimate at_theta_pi;
};

inline WorstCasePathOutage worst_case_path_outage(const RelayScenario &sc, std::uint64_t n,
                                                  std::uint64_t seed, const McOptions &opt = {})
{
    sc.validate();
    WorstCasePathOutage out;
    const auto eval = [&](double theta) {
        const auto [ls, ld] = link_lengths(theta, sc.geometry);
        return conditional_outage(sc, ls, ld, elevation_angle(ls, sc.geometry.h_u_m),
                                  elevation_angle(ld, sc.geometry.h_u_m), n, seed, opt);
    };
    out.at_theta_0 = eval(0.0);
    out.at_theta_pi = eval(pi);
    if (out.at_theta_pi.probability > out.at_theta_0.probability)
    {
        out.worst = out.at_theta_pi;
        out.worst_theta_rad = pi;
    }
    else
    {
        out.worst = out.at_theta_0;
        out.worst_theta_rad = 0.0;
    }
    return out;
}

// Samples the joint misalignment gain product of one hop n times. The values
// do not depend on link length or placement, so callers can reuse (and sort)
// them to evaluate outage against any number of length thresholds - this is
// what makes the empirical outage exactly monotone in L under common random
// numbers.
inline std::vector<double> sample_hop_gains(const HopConfig &hop, std::uint64_t n,
                                            std::uint64_t seed, const HopStreams &streams,
                                            const McOptions &opt = {})
{
    hop.validate();
    std::vector<double> gains(n);
    detail::parallel_for_samples(n, opt.threads, [&](std::uint64_t i) {
        gains[i] = detail::sampled_hop_gain(hop, streams, seed, i, opt.truncation);
    });
    return gains;
}

// Single-hop outage probability at length L for a pre-sorted gain sample, at
// fixed relay altitude (elevation = asin(h_u / L)).
inline double hop_outage_from_sorted_gains(const HopConfig &hop, const std::vector<double> &sorted_gains,
                                           double l_m, double h_u_m, double gamma_th)
{
    const double amp = hop.tx_power_w / hop.noise_power_w *
                       hop_channel_gain(hop, l_m, elevation_angle(l_m, h_u_m));
    const double threshold = gamma_th / amp;
    const auto it = std::lower_bound(sorted_gains.begin(), sorted_gains.end(), threshold);
    return static_cast<double>(it - sorted_gains.begin()) / static_cast<double>(sorted_gains.size());
}

// Largest length L in [l_lo, l_hi] at which the single-hop outage of a
// pre-sorted common-random-number gain sample stays at or below p_target.
// The empirical curve is monotone in L by construction (the loss is strictly
// increasing in L); this is asserted at the brackets. Relative length
// tolerance 1e-3.
inline double max_length_from_sorted_gains(const HopConfig &hop, const std::vector<double> &sorted_gains,
                                           double h_u_m, double gamma_th, double p_target,
                                           double l_lo_m, double l_hi_m)
{
    if (!(h_u_m > 0.0) || !(l_lo_m >= h_u_m) || !(l_lo_m < l_hi_m))
        throw domain_error("max link length needs h_u > 0 and h_u <= l_lo < l_hi");
    if (!(p_target >= 0.0) || !(p_target <= 1.0))
        throw domain_error("outage target must lie in [0, 1]");

    const auto outage_at = [&](double l) {
        return hop_outage_from_sorted_gains(hop, sorted_gains, l, h_u_m, gamma_th);
    };

    const double p_lo = outage_at(l_lo_m);
    const double p_hi = outage_at(l_hi_m);
    if (p_lo > p_hi)
        throw domain_error("empirical outage is not monotone across the bracket");

    if (p_hi <= p_target)
        return l_hi_m; // constraint satisfied over the whole range
    if (p_lo > p_target)
        throw infeasible_error("outage exceeds the target even at the shortest length", p_lo, p_hi);

    double lo = l_lo_m, hi = l_hi_m;
    while (hi - lo > 1e-3 * hi)
    {
        const double mid = 0.5 * (lo + hi);
        (outage_at(mid) <= p_target ? lo : hi) = mid;
    }
    return lo;
}

// Convenience form of the above that draws and sorts its own gain sample.
inline double max_link_length(const HopConfig &hop, double h_u_m, double gamma_th, double p_target,
                              double l_lo_m, double l_hi_m, std::uint64_t n, std::uint64_t seed,
                              const McOptions &opt = {}, const HopStreams &streams = su_streams)
{
    std::vector<double> gains = sample_hop_gains(hop, n, seed, streams, opt);
    std::sort(gains.begin(), gains.end());
    return max_length_from_sorted_gains(hop, gains, h_u_m, gamma_th, p_target, l_lo_m, l_hi_m);
}

} // namespace nfplink

#endif // NFPLINK_MONTECARLO_HPP

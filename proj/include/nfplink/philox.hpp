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

#ifndef NFPLINK_PHILOX_HPP
#define NFPLINK_PHILOX_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include "units.hpp"

namespace nfplink
{

// Philox-4x32-10 counter-based pseudo-random generator.
//
// The generator is a pure function (key, counter) -> 128 random bits, which
// is what makes every Monte Carlo estimator in this library independent of
// thread scheduling: the randomness consumed by sample i of stream s is a
// function of (seed, s, i) alone. The multipliers and key schedule are the
// published reference constants; outputs are validated against the reference
// test vectors in the unit tests.
struct philox4x32
{
    using block_t = std::array<std::uint32_t, 4>;
    using key_t = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t mult0 = 0xD2511F53u;
    static constexpr std::uint32_t mult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl0 = 0x9E3779B9u; // golden ratio
    static constexpr std::uint32_t weyl1 = 0xBB67AE85u; // sqrt(3) - 1

    static block_t generate(key_t key, block_t ctr)
    {
        for (int round = 0; round < 10; ++round)
        {
            const std::uint64_t p0 = static_cast<std::uint64_t>(mult0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(mult1) * ctr[2];
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += weyl0;
            key[1] += weyl1;
        }
        return ctr;
    }
};

// Maps 64 random bits to a double in (0, 1]: the half-step offset keeps the
// value strictly positive, so log() and the Box-Muller transform stay finite
// for every input. (At the very top input the exact value 1 - 2^-54 is not
// representable and rounds to 1.0, which both consumers tolerate.)
inline double bits_to_unit_open(std::uint64_t x)
{
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Deterministic randomness for one Monte Carlo sample.
//
// Logical address space: key = 64-bit seed, counter = (block, sample-index
// low/high words, stream id). Each refill consumes one counter block (128
// bits) and yields one Box-Muller pair, so a sample may draw any number of
// variates without colliding with other samples or streams. Streams separate
// the independent random objects of a scenario (one per antenna array role).
class sample_rng
{
  public:
    sample_rng(std::uint64_t seed, std::uint32_t stream, std::uint64_t sample_index)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          sample_lo_(static_cast<std::uint32_t>(sample_index)),
          sample_hi_(static_cast<std::uint32_t>(sample_index >> 32)), stream_(stream)
    {
    }

    // Standard normal variate. Generated in pairs; the second of each pair
    // is served from cache before a new counter block is consumed.
    double normal()
    {
        if (have_cached_)
        {
            have_cached_ = false;
            return cached_;
        }
        const auto b = philox4x32::generate(key_, {block_++, sample_lo_, sample_hi_, stream_});
        const std::uint64_t w0 = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
        const std::uint64_t w1 = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
        const double u1 = bits_to_unit_open(w0);
        const double u2 = bits_to_unit_open(w1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * pi * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    // Uniform variate in (0, 1). Shares the block counter with normal();
    // callers that interleave kinds still get reproducible, collision-free
    // draws because every refill uses a fresh counter block.
    double uniform()
    {
        const auto b = philox4x32::generate(key_, {block_++, sample_lo_, sample_hi_, stream_});
        const std::uint64_t w0 = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
        return bits_to_unit_open(w0);
    }

  private:
    philox4x32::key_t key_;
    std::uint32_t sample_lo_;
    std::uint32_t sample_hi_;
    std::uint32_t stream_;
    std::uint32_t block_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace nfplink

#endif // NFPLINK_PHILOX_HPP

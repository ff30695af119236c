//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace xlcount
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based block function.
 *
 * See Salmon et al., "Parallel random numbers: as easy as 1, 2, 3" (SC11).
 */
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Splittable stream of 64-bit random words.
 *
 * A stream is identified by (seed, stream id): the seed is the Philox key,
 * the stream id occupies the upper 64 bits of the counter and the lower 64
 * bits count blocks. Two streams with different ids never share a block, so
 * simulation m can own stream(seed, m) regardless of which thread runs it.
 *
 * Satisfies UniformRandomBitGenerator.
 */
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        if (buffered_ == 0)
            refill();
        --buffered_;
        return buffer_[buffered_];
    }

    //! Number of 128-bit blocks consumed so far
    std::uint64_t blocks() const noexcept { return block_; }

  private:
    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;

    void refill() noexcept;
};

//! Stream m derived from a master seed
inline CounterRng stream(std::uint64_t master_seed, std::uint64_t m) noexcept
{
    return CounterRng(master_seed, m);
}

//---------------------------------------------------------------------------//
//! Uniform double in the open interval (0, 1) with 53 random bits
inline double uniform_open(CounterRng& rng) noexcept
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
}  // namespace xlcount

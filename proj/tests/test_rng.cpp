//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_rng.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "xlcount/rng.hpp"
#include "xlcount/samplers.hpp"
#include "xlcount/error.hpp"

using namespace xlcount;

// Known-answer vectors of the Random123 distribution
TEST(Philox, KnownAnswers)
{
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, WordsComeFromCounterBlocks)
{
    std::uint64_t seed = 0x299f31d0a4093822ull;
    std::uint64_t id = 7;
    CounterRng rng(seed, id);
    for (std::uint32_t block = 0; block < 3; ++block)
    {
        auto out = philox4x32_10({block, 0, 7, 0}, {0xa4093822, 0x299f31d0});
        EXPECT_EQ(rng(), (std::uint64_t(out[1]) << 32) | out[0]);
        EXPECT_EQ(rng(), (std::uint64_t(out[3]) << 32) | out[2]);
        EXPECT_EQ(rng.blocks(), block + 1u);
    }
}

TEST(CounterRng, StreamsAreReproducibleAndDistinct)
{
    auto a = stream(42, 3);
    auto b = stream(42, 3);
    auto c = stream(42, 4);
    auto d = stream(43, 3);
    std::set<std::uint64_t> seen;
    for (int k = 0; k < 1000; ++k)
    {
        auto x = a();
        EXPECT_EQ(x, b());
        seen.insert(x);
        seen.insert(c());
        seen.insert(d());
    }
    EXPECT_EQ(seen.size(), 3000u);
}

TEST(CounterRng, UniformOpenInterval)
{
    auto rng = stream(1, 1);
    double sum = 0;
    int const m = 200000;
    for (int k = 0; k < m; ++k)
    {
        double u = uniform_open(rng);
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Standard error of the mean is sqrt(1/12 / m)
    EXPECT_NEAR(sum / m, 0.5, 4 * std::sqrt(1.0 / 12 / m));
}

//---------------------------------------------------------------------------//
namespace
{
struct Moments
{
    double mean = 0;
    double var = 0;
};

template<class F>
Moments sample_moments(F&& draw, int m)
{
    double sum = 0, sq = 0;
    for (int k = 0; k < m; ++k)
    {
        double x = draw();
        sum += x;
        sq += x * x;
    }
    double mean = sum / m;
    return {mean, (sq - m * mean * mean) / (m - 1)};
}
}  // namespace

TEST(Samplers, GammaMomentsIncludingSmallShape)
{
    auto rng = stream(5, 0);
    int const m = 400000;
    for (double shape : {0.05, 0.3, 1.0, 2.5, 40.0})
    {
        auto mom = sample_moments([&] { return sample_gamma(shape, rng); }, m);
        // Var of the sample mean is shape / m
        EXPECT_NEAR(mom.mean, shape, 4 * std::sqrt(shape / m)) << shape;
        // Loose band: the sample variance of a gamma is heavy-tailed for small k
        EXPECT_NEAR(mom.var, shape, 0.05 * shape + 4 * std::sqrt(shape / m)) << shape;
    }
    EXPECT_THROW(sample_gamma(0.0, rng), Error);
}

TEST(Samplers, PoissonBothRegimes)
{
    auto rng = stream(6, 0);
    int const m = 400000;
    for (double mean : {0.0, 0.4, 7.5, 29.9, 30.1, 106.9, 2500.0})
    {
        auto mom = sample_moments(
            [&] { return static_cast<double>(sample_poisson(mean, rng)); }, m);
        double se = std::sqrt(std::max(mean, 1e-12) / m);
        EXPECT_NEAR(mom.mean, mean, 4 * se + 1e-12) << mean;
        // Var of the sample variance ~ (2 mu^2 + mu) / m
        EXPECT_NEAR(mom.var, mean, 4 * std::sqrt((2 * mean * mean + mean) / m) + 1e-12)
            << mean;
    }
}

TEST(Samplers, BinomialBothRegimesAndEdges)
{
    auto rng = stream(8, 0);
    int const m = 400000;
    struct Case
    {
        std::int64_t n;
        double p;
    };
    for (auto c : {Case{11, 0.5}, Case{40, 0.05}, Case{200, 0.3}, Case{1000, 0.9},
                   Case{5, 0.0}, Case{5, 1.0}, Case{0, 0.4}})
    {
        double mu = c.n * c.p;
        double var = mu * (1 - c.p);
        auto mom = sample_moments(
            [&] { return static_cast<double>(sample_binomial(c.n, c.p, rng)); }, m);
        EXPECT_NEAR(mom.mean, mu, 4 * std::sqrt(var / m) + 1e-12) << c.n << " " << c.p;
        EXPECT_NEAR(mom.var, var, 4 * std::sqrt(2 * var * var / m + var / m) + 1e-12)
            << c.n << " " << c.p;
    }
}

TEST(Samplers, NegBinEdges)
{
    auto rng = stream(9, 0);
    EXPECT_EQ(sample_negbin(0.0, 0.3, rng), 0);
    EXPECT_EQ(sample_negbin(4.0, 1.0, rng), 0);
}

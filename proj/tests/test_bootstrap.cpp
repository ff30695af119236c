//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_bootstrap.cpp
//---------------------------------------------------------------------------//
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xlcount/bootstrap.hpp"
#include "xlcount/distributions.hpp"
#include "xlcount/error.hpp"
#include "xlcount/json.hpp"

using namespace xlcount;

namespace
{
BootstrapConfig config(std::int64_t sims, std::uint64_t seed)
{
    BootstrapConfig c;
    c.sims = sims;
    c.master_seed = seed;
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
// SUMMARIES
//---------------------------------------------------------------------------//
TEST(Summarize, SingleSample)
{
    std::vector<std::int64_t> one{3};
    auto s = summarize(one, "x");
    EXPECT_EQ(s.count, 1);
    EXPECT_EQ(s.mean, 3.0);
    EXPECT_EQ(s.variance, 0.0);
    EXPECT_EQ(s.hist_min, 3);
    EXPECT_EQ(s.hist_counts, std::vector<std::int64_t>{1});
    for (auto const& [level, value] : s.quantiles)
        EXPECT_EQ(value, 3);
}

TEST(Summarize, HandArithmetic)
{
    std::vector<std::int64_t> v{0, 0, 2, 2};
    auto s = summarize(v);
    EXPECT_EQ(s.mean, 1.0);
    EXPECT_DOUBLE_EQ(s.variance, 4.0 / 3.0);
    EXPECT_EQ(s.hist_counts, (std::vector<std::int64_t>{2, 0, 2}));
    // Smallest k with empirical cdf >= level
    EXPECT_EQ(s.quantiles[2].second, 0);  // 25%
    EXPECT_EQ(s.quantiles[3].second, 0);  // 50%
    EXPECT_EQ(s.quantiles[4].second, 2);  // 75%
}

TEST(Summarize, Empty)
{
    std::vector<std::int64_t> none;
    try
    {
        summarize(none);
        FAIL() << "expected EmptySampleSet";
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::EmptySampleSet);
    }
}

TEST(Summarize, PoissonDraws)
{
    int const m = 1000000;
    std::vector<std::int64_t> v(m);
    CountDistribution d(Poisson{27.752});
    for (int k = 0; k < m; ++k)
    {
        auto rng = stream(4, k);
        v[k] = sample(d, rng);
    }
    auto s = summarize(v);
    EXPECT_NEAR(s.mean, 27.752, 0.03);
}

TEST(CountHistogram, MergeIsExact)
{
    CountHistogram a, b, all;
    for (std::int64_t x : {5, 9, 2, 2, 7})
    {
        a.add(x);
        all.add(x);
    }
    for (std::int64_t x : {-3, 11, 4})
    {
        b.add(x);
        all.add(x);
    }
    a.merge(b);
    EXPECT_EQ(a.min(), all.min());
    EXPECT_EQ(a.counts(), all.counts());
    EXPECT_TRUE(a.sum() == all.sum());
    EXPECT_TRUE(a.sum_squares() == all.sum_squares());
}

//---------------------------------------------------------------------------//
// PARAMETER RESAMPLING
//---------------------------------------------------------------------------//
TEST(Resample, BoundaryParameters)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    fit.lambda_hat[5] = 0.0;
    fit.delta_hat[0] = 1.0;
    fit.delta_hat[3] = 0.0;
    auto basis = ResamplingBasis::from(pair);
    for (int m = 0; m < 2000; ++m)
    {
        auto rng = stream(1, m);
        auto draw = resample_params_poisson(fit, basis, rng);
        EXPECT_EQ(draw.lambda_hat[5], 0.0);
        EXPECT_EQ(draw.delta_hat[0], 1.0);
        EXPECT_EQ(draw.delta_hat[3], 0.0);
    }
}

TEST(Resample, LambdaMoments)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    auto basis = ResamplingBasis::from(pair);
    int const m = 1000000;
    double sum = 0, sq = 0, dsum = 0;
    for (int k = 0; k < m; ++k)
    {
        auto rng = stream(2, k);
        auto draw = resample_params_poisson(fit, pair, rng);
        sum += draw.lambda_hat[0];
        sq += draw.lambda_hat[0] * draw.lambda_hat[0];
        dsum += draw.delta_hat[1];
    }
    double volume = 20 + 25 + 32 + 38 + 42 + 45;
    EXPECT_DOUBLE_EQ(basis.exposure_sums[0], volume);
    double target_var = fit.lambda_hat[0] / volume;
    double mean = sum / m;
    double var = (sq - m * mean * mean) / (m - 1);
    EXPECT_NEAR(fit.lambda_hat[0], 0.327, 5e-4);
    EXPECT_NEAR(mean, fit.lambda_hat[0], 4 * std::sqrt(target_var / m));
    EXPECT_NEAR(var, target_var, 4 * target_var * std::sqrt(2.0 / m) * 1.05);

    double stock = static_cast<double>(basis.stock_sums[1]);
    double dvar = fit.delta_hat[1] * (1 - fit.delta_hat[1]) / stock;
    EXPECT_NEAR(dsum / m, fit.delta_hat[1], 4 * std::sqrt(dvar / m));
}

//---------------------------------------------------------------------------//
// POISSON SIMULATION
//---------------------------------------------------------------------------//
TEST(PoissonBootstrap, SingleSimulationDeterminism)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    auto a = simulate_next_year_poisson(config(1, 7), fit, pair, 50);
    auto b = simulate_next_year_poisson(config(1, 7), fit, pair, 50);
    EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
    EXPECT_EQ(a.targets.front().count, 1);
    EXPECT_EQ(a.targets.front().variance, 0.0);
}

TEST(PoissonBootstrap, ThreadCountIndependence)
{
    auto pair = oracle::example_pair(2);
    auto fit = fit_poisson(pair);
    auto c = config(20000, 3);
    c.threads = 1;
    auto ref = nlohmann::json(simulate_lower_triangle_poisson(c, fit, pair)).dump();
    for (int threads : {2, 5, 8})
    {
        c.threads = threads;
        EXPECT_EQ(nlohmann::json(simulate_lower_triangle_poisson(c, fit, pair)).dump(), ref)
            << threads;
    }
}

TEST(PoissonBootstrap, RetainedSamplesReproduceSummary)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    auto c = config(5000, 5);
    c.retain_samples = true;
    c.threads = 3;
    auto result = simulate_lower_triangle_poisson(c, fit, pair);
    for (auto const& s : result.targets)
    {
        ASSERT_TRUE(s.samples.has_value());
        auto again = summarize(*s.samples, s.target);
        EXPECT_EQ(again.mean, s.mean);
        EXPECT_EQ(again.variance, s.variance);
        EXPECT_EQ(again.quantiles, s.quantiles);
        EXPECT_EQ(again.hist_counts, s.hist_counts);
    }
}

TEST(PoissonBootstrap, FrozenParametersConstantPaths)
{
    auto pair = oracle::example_pair(1);
    PoissonFit still{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
    auto result = simulate_lower_triangle_poisson(config(200, 1), still, pair);
    for (auto const& s : result.targets)
    {
        int origin = std::stoi(s.target.substr(2));
        EXPECT_EQ(s.variance, 0.0);
        EXPECT_EQ(s.mean, static_cast<double>(pair.latest(origin))) << s.target;
    }
}

TEST(PoissonBootstrap, FrozenParametersMatchConditionalLaw)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    auto c = config(200000, 8);
    c.resample_parameters = false;
    auto result = simulate_lower_triangle_poisson(c, fit, pair);
    auto const& s = result.at("C(5,6)");
    auto law = conditional_law(fit, pair, 5, 6);
    auto test = oracle::chi_squared_gof(oracle::to_map(s.hist_min, s.hist_counts),
                                        [&](std::int64_t k) { return pmf(law.law, k); }, 200);
    EXPECT_GT(test.p_value, 1e-4) << test.statistic << " dof " << test.dof;
}

TEST(PoissonBootstrap, FastUltimateMatchesFullPath)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_poisson(pair);
    auto full = simulate_lower_triangle_poisson(config(200000, 21), fit, pair);
    auto c = config(200000, 22);
    c.fast_ultimate = true;
    auto fast = simulate_lower_triangle_poisson(c, fit, pair);
    ASSERT_EQ(fast.targets.size(), 5u);
    auto const& a = full.at("C(5,6)");
    auto const& b = fast.at("C(5,6)");
    auto test = oracle::chi_squared_two_sample(oracle::to_map(a.hist_min, a.hist_counts),
                                               oracle::to_map(b.hist_min, b.hist_counts));
    EXPECT_GT(test.p_value, 1e-4) << test.statistic << " dof " << test.dof;
}

TEST(PoissonBootstrap, MeanAndVarianceAgainstPlugIn)
{
    for (int which : {1, 2})
    {
        auto pair = oracle::example_pair(which);
        auto fit = fit_poisson(pair);
        auto result = simulate_next_year_poisson(config(200000, 30 + which), fit, pair, 50);
        auto const& s = result.targets.front();
        double plug_in = lambda_prime(fit, 6) * 50;
        EXPECT_NEAR(s.mean, plug_in, 4 * std::sqrt(s.variance / s.count));
        EXPECT_GT(s.variance, plug_in);
    }
}

//---------------------------------------------------------------------------//
// NB SIMULATION
//---------------------------------------------------------------------------//
TEST(NegBinBootstrap, DegenerateAtEntry)
{
    auto pair = oracle::example_pair(1);
    auto fit = fit_negbin(pair);
    try
    {
        simulate_nb(config(10, 1), fit, pair, 50);
        FAIL() << "expected DegenerateFit";
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
    }
}

TEST(NegBinBootstrap, ZeroThresholdForcesFallback)
{
    auto pair = oracle::example_pair(2);
    auto nb = fit_negbin(pair);
    auto c = config(40000, 12);
    c.nb_degeneracy_threshold = 0;
    auto forced = simulate_nb(c, nb, pair, 50);
    EXPECT_EQ(forced.nb_fallbacks, c.sims);

    // Every simulation is then a Poisson draw at resampled Poisson-style
    // parameters, with lambda re-estimated from an NB-resimulated triangle:
    // its mean still matches the plug-in intensity
    auto const& s = forced.targets.front();
    EXPECT_NEAR(s.mean, lambda_prime(fit_poisson(pair), 6) * 50,
                4 * std::sqrt(s.variance / s.count));
}

TEST(NegBinBootstrap, MeanAndFallbackFraction)
{
    auto pair = oracle::example_pair(2);
    auto nb = fit_negbin(pair);
    auto result = simulate_nb(config(10000, 13), nb, pair, 50);
    auto const& s = result.targets.front();
    EXPECT_NEAR(s.mean, 30.243, 4 * std::sqrt(s.variance / s.count));
    EXPECT_GT(result.nb_fallbacks, 0);
    EXPECT_LT(result.nb_fallbacks, result.sims);
}

TEST(NegBinBootstrap, ThreadCountIndependence)
{
    auto pair = oracle::example_pair(2);
    auto nb = fit_negbin(pair);
    auto c = config(3000, 14);
    auto ref = nlohmann::json(simulate_lower_triangle_nb(c, nb, pair)).dump();
    c.threads = 4;
    EXPECT_EQ(nlohmann::json(simulate_lower_triangle_nb(c, nb, pair)).dump(), ref);
}

TEST(NegBinBootstrap, FrozenParametersMatchConditionalLaw)
{
    auto pair = oracle::example_pair(2);
    auto nb = fit_negbin(pair);
    auto c = config(200000, 15);
    c.resample_parameters = false;
    auto result = simulate_lower_triangle_nb(c, nb, pair);
    for (char const* cell : {"C(4,5)", "C(6,6)"})
    {
        auto const& s = result.at(cell);
        int i = cell[2] - '0';
        int j = cell[4] - '0';
        auto law = conditional_law(nb, pair, i, j);
        auto test = oracle::chi_squared_gof(oracle::to_map(s.hist_min, s.hist_counts),
                                            [&](std::int64_t k) { return pmf(law.law, k); },
                                            300);
        EXPECT_GT(test.p_value, 1e-4) << cell << " " << test.statistic;
    }
}

TEST(Targets, Labels)
{
    auto cells = lower_triangle_cells(4);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_EQ(cells.front().label(), "C(2,4)");
    EXPECT_EQ(cells.back().label(), "C(4,4)");
    auto ult = ultimate_cells(4);
    ASSERT_EQ(ult.size(), 3u);
    EXPECT_EQ(ult[1].label(), "C(3,4)");
}

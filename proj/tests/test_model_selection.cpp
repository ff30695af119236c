//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_model_selection.cpp
//---------------------------------------------------------------------------//
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xlcount/error.hpp"
#include "xlcount/model_selection.hpp"

using namespace xlcount;

TEST(LoglikPoisson, SecondExample)
{
    auto pair = oracle::example_pair(2);
    EXPECT_NEAR(loglik_poisson(pair, fit_poisson(pair)), -53.937, 0.01);
}

TEST(LoglikPoisson, TermByTermOracle)
{
    for (int which : {1, 2})
    {
        auto ex = oracle::example(which);
        auto pair = oracle::to_pair(ex);
        auto fit = fit_poisson(pair);
        EXPECT_NEAR(loglik_poisson(pair, fit),
                    static_cast<double>(oracle::poisson_loglik(ex, fit.lambda_hat)), 1e-6);
    }
}

TEST(LoglikPoisson, ZerosAndImpossible)
{
    TrianglePair zero(ClaimTriangle(3), ClaimTriangle(3), ExposureVector({1, 2, 3}));
    EXPECT_EQ(loglik_poisson(zero, fit_poisson(zero)), 0.0);

    auto pair = oracle::example_pair(1);
    PoissonFit bad = fit_poisson(pair);
    bad.lambda_hat[0] = 0;
    double ll = loglik_poisson(pair, bad);
    EXPECT_TRUE(std::isinf(ll) && ll < 0);
}

TEST(LoglikNegBin, SecondExample)
{
    auto pair = oracle::example_pair(2);
    auto fit = fit_negbin(pair);
    EXPECT_NEAR(loglik_negbin(pair, fit), -50.793, 0.01);
    EXPECT_NEAR(loglik_negbin(pair, fit), fit.loglik, 1e-10);
}

TEST(LoglikNegBin, PoissonLimitContinuity)
{
    auto pair = oracle::example_pair(2);
    NegBinFit fit = fit_negbin(pair);
    fit.p1 = 1 - 1e-6;
    fit.p = p_sequence(fit.p1, fit.delta_hat);
    fit.r_hat = estimate_r(fit.lambda_hat, fit.p);
    EXPECT_NEAR(loglik_negbin(pair, fit), loglik_poisson(pair, fit_poisson(pair)), 1e-3);
}

TEST(LoglikNegBin, ZerosAndDegenerate)
{
    TrianglePair zero(ClaimTriangle(2), ClaimTriangle(2), ExposureVector({1, 2}));
    NegBinFit fit;
    fit.lambda_hat = {0, 0};
    fit.delta_hat = {0};
    fit.p = {0.5, 0.5};
    fit.r_hat = {0, 0};
    fit.p1 = 0.5;
    EXPECT_EQ(loglik_negbin(zero, fit), 0.0);

    auto pair = oracle::example_pair(1);
    try
    {
        loglik_negbin(pair, fit_negbin(pair));
        FAIL() << "expected DegenerateFit";
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
    }
}

TEST(LoglikNegBin, MleDominatesGrid)
{
    auto pair = oracle::example_pair(2);
    auto fit = fit_negbin(pair);
    double best = loglik_negbin(pair, fit);
    for (int k = 1; k <= 200; ++k)
    {
        NegBinFit other = fit;
        other.p1 = k / 201.0;
        other.p = p_sequence(other.p1, other.delta_hat);
        other.r_hat = estimate_r(other.lambda_hat, other.p);
        EXPECT_GE(best, loglik_negbin(pair, other)) << other.p1;
    }
}

//---------------------------------------------------------------------------//
TEST(Compare, SecondExample)
{
    auto cmp = compare(oracle::example_pair(2));
    EXPECT_NEAR(cmp.loglik_poisson, -53.937, 0.01);
    ASSERT_TRUE(cmp.loglik_negbin.has_value());
    EXPECT_NEAR(*cmp.loglik_negbin, -50.793, 0.01);
    EXPECT_NEAR(cmp.aic_poisson, 119.875, 0.02);
    EXPECT_NEAR(*cmp.aic_negbin, 115.586, 0.02);
    EXPECT_EQ(cmp.selected, Model::NegBin);
    EXPECT_EQ(cmp.aic_poisson, 2.0 * cmp.k_poisson - 2.0 * cmp.loglik_poisson);
    EXPECT_EQ(*cmp.aic_negbin, 2.0 * cmp.k_negbin - 2.0 * *cmp.loglik_negbin);
}

TEST(Compare, FirstExampleDegenerate)
{
    auto cmp = compare(oracle::example_pair(1));
    EXPECT_FALSE(cmp.aic_negbin.has_value());
    EXPECT_FALSE(cmp.loglik_negbin.has_value());
    EXPECT_EQ(cmp.selected, Model::Poisson);
}

TEST(Compare, ParameterCountAudit)
{
    // Back-solve k from the reference AIC and log-likelihood values
    EXPECT_NEAR((119.875 + 2 * -53.937) / 2, 6, 0.01);
    EXPECT_NEAR((115.586 + 2 * -50.793) / 2, 7, 0.01);
    auto cmp = compare(oracle::example_pair(2));
    EXPECT_EQ(cmp.k_poisson, 6);
    EXPECT_EQ(cmp.k_negbin, 7);
}

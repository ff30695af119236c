//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file model_selection.cpp
//---------------------------------------------------------------------------//
#include "xlcount/model_selection.hpp"

#include "xlcount/distributions.hpp"
#include "xlcount/error.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
double loglik_poisson(TrianglePair const& pair, PoissonFit const& fit)
{
    int const n = pair.size();
    if (fit.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "fit and triangle differ in n");
    double total = 0;
    for (int j = 1; j <= n; ++j)
    {
        double lambda = fit.lambda_hat[static_cast<std::size_t>(j - 1)];
        for (int i = 1; i <= n - j + 1; ++i)
        {
            total += poisson_log_pmf(pair.new_claims()(i, j),
                                     lambda * pair.exposure()[i]);
        }
    }
    return total;
}

double loglik_negbin(TrianglePair const& pair, NegBinFit const& fit)
{
    if (fit.degenerate)
    {
        throw Error(ErrorCode::DegenerateFit,
                    "NB likelihood undefined for a degenerate fit");
    }
    int const n = pair.size();
    if (fit.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "fit and triangle differ in n");
    double total = 0;
    for (int j = 1; j <= n; ++j)
    {
        auto idx = static_cast<std::size_t>(j - 1);
        for (int i = 1; i <= n - j + 1; ++i)
        {
            total += negbin_log_pmf(pair.new_claims()(i, j),
                                    fit.r_hat[idx] * pair.exposure()[i],
                                    fit.p[idx]);
        }
    }
    return total;
}

ModelComparison compare(TrianglePair const& pair)
{
    int const n = pair.size();
    ModelComparison result;

    auto poisson = fit_poisson(pair);
    result.loglik_poisson = loglik_poisson(pair, poisson);
    result.k_poisson = n;
    result.aic_poisson = aic(result.loglik_poisson, result.k_poisson);

    result.k_negbin = n + 1;
    auto negbin = fit_negbin(pair);
    if (!negbin.degenerate)
    {
        result.loglik_negbin = loglik_negbin(pair, negbin);
        result.aic_negbin = aic(*result.loglik_negbin, result.k_negbin);
        if (*result.aic_negbin < result.aic_poisson - 1e-9)
            result.selected = Model::NegBin;
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace xlcount

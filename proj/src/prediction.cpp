//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file prediction.cpp
//---------------------------------------------------------------------------//
#include "xlcount/prediction.hpp"

#include <numeric>

#include "xlcount/error.hpp"

namespace xlcount
{
namespace
{
void check_exposure(double e)
{
    if (!(e > 0))
        throw Error(ErrorCode::InvalidParameter, "exposure must be positive");
}

void check_not_degenerate(NegBinFit const& fit)
{
    if (fit.degenerate)
    {
        throw Error(ErrorCode::DegenerateFit,
                    "NB fit has p1 -> 1; use the Poisson model");
    }
}

void check_sizes(int fit_n, TrianglePair const& pair)
{
    if (fit_n != pair.size())
        throw Error(ErrorCode::DimensionMismatch, "fit and triangle differ in n");
}
}  // namespace

//---------------------------------------------------------------------------//
std::string CellTarget::label() const
{
    if (next_year)
        return "next-year";
    return "C(" + std::to_string(origin) + "," + std::to_string(dev) + ")";
}

//---------------------------------------------------------------------------//
PredictiveLaw predict_next_year_poisson(PoissonFit const& fit, double next_exposure)
{
    check_exposure(next_exposure);
    int const n = fit.size();
    double mean = lambda_prime(fit, n) * next_exposure;
    return {CellTarget::next(n), CountDistribution(Poisson{mean}), Model::Poisson};
}

PredictiveLaw predict_next_year_negbin(NegBinFit const& fit, double next_exposure)
{
    check_exposure(next_exposure);
    check_not_degenerate(fit);
    int const n = fit.size();
    double shape = std::accumulate(fit.r_hat.begin(), fit.r_hat.end(), 0.0);
    return {CellTarget::next(n),
            CountDistribution(NegBin{shape * next_exposure, fit.p.back()}),
            Model::NegBin};
}

PredictiveLaw conditional_law(PoissonFit const& fit,
                              TrianglePair const& pair,
                              int origin,
                              int dev)
{
    check_sizes(fit.size(), pair);
    auto factors = conditional_factors(fit, origin, dev);
    BinomialPoisson law{{pair.latest(origin), factors.delta_prime},
                        {factors.lambda_prime * pair.exposure()[origin]}};
    return {{origin, dev, false}, CountDistribution(law), Model::Poisson};
}

PredictiveLaw conditional_law(NegBinFit const& fit,
                              TrianglePair const& pair,
                              int origin,
                              int dev)
{
    check_sizes(fit.size(), pair);
    check_not_degenerate(fit);
    int const n = fit.size();
    auto factors = conditional_factors(fit.lambda_hat, fit.delta_hat, origin, dev);
    double shape = 0;
    for (int k = n - origin + 2; k <= dev; ++k)
        shape += fit.r_hat[static_cast<std::size_t>(k - 1)];
    BinomialNegBin law{{pair.latest(origin), factors.delta_prime},
                       {shape * pair.exposure()[origin],
                        fit.p[static_cast<std::size_t>(dev - 1)]}};
    return {{origin, dev, false}, CountDistribution(law), Model::NegBin};
}

double point_estimate_ultimate(PoissonFit const& fit,
                               TrianglePair const& pair,
                               int origin)
{
    check_sizes(fit.size(), pair);
    int const n = fit.size();
    auto factors = conditional_factors(fit, origin, n);
    return factors.lambda_prime * pair.exposure()[origin]
           + factors.delta_prime * static_cast<double>(pair.latest(origin));
}

//---------------------------------------------------------------------------//
}  // namespace xlcount

//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/model_selection.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

#include "estimators.hpp"
#include "prediction.hpp"
#include "triangle.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
/*!
 * Log-likelihood of the N triangle under the Poisson fit.
 *
 * Returns -inf when a positive count meets a zero intensity, which can only
 * happen for user-supplied fits.
 */
double loglik_poisson(TrianglePair const& pair, PoissonFit const& fit);

//! N-triangle log-likelihood of a non-degenerate NB fit
double loglik_negbin(TrianglePair const& pair, NegBinFit const& fit);

//---------------------------------------------------------------------------//
struct ModelComparison
{
    double loglik_poisson = 0;
    int k_poisson = 0;
    double aic_poisson = 0;

    //! Empty when the NB fit is degenerate
    std::optional<double> loglik_negbin;
    int k_negbin = 0;
    std::optional<double> aic_negbin;

    Model selected = Model::Poisson;
};

//! 2k - 2 loglik
inline double aic(double loglik, int parameters)
{
    return 2.0 * parameters - 2.0 * loglik;
}

/*!
 * Fit both models and select by AIC.
 *
 * Only the N triangle enters: the binomial drop likelihood is common to both
 * models. The parameter counts are n (the lambdas) and n + 1 (the shapes and
 * p1). Ties within 1e-9 go to the Poisson model.
 */
ModelComparison compare(TrianglePair const& pair);

//---------------------------------------------------------------------------//
}  // namespace xlcount

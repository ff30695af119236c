//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/prediction.hpp
//! Plug-in predictive laws for pricing (next year) and reserving (open years).
//---------------------------------------------------------------------------//
#pragma once

#include <string>

#include "distributions.hpp"
#include "estimators.hpp"
#include "triangle.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
enum class Model
{
    Poisson,
    NegBin,
};

inline char const* to_string(Model m)
{
    return m == Model::Poisson ? "poisson" : "negbin";
}

//! Cell whose law is predicted; next year is (n+1, n)
struct CellTarget
{
    int origin = 0;
    int dev = 0;
    bool next_year = false;

    static CellTarget next(int n) { return {n + 1, n, true}; }

    std::string label() const;
};

struct PredictiveLaw
{
    CellTarget target;
    CountDistribution law;
    Model model;
};

//---------------------------------------------------------------------------//

//! Poisson(lambda'_n * E_next)
PredictiveLaw predict_next_year_poisson(PoissonFit const& fit, double next_exposure);

//! NegBin(sum_k r_k * E_next, p_n); throws DegenerateFit on degenerate fits
PredictiveLaw predict_next_year_negbin(NegBinFit const& fit, double next_exposure);

/*!
 * Conditional law of C_{i,j} given the observed triangle.
 *
 * Binomial(C_{i,n-i+1}, delta'_{i,j}) plus an independent Poisson or NB
 * component for claims first reported after the latest diagonal. The
 * diagonal itself is a point mass at the observed value.
 */
PredictiveLaw conditional_law(PoissonFit const& fit,
                              TrianglePair const& pair,
                              int origin,
                              int dev);
PredictiveLaw conditional_law(NegBinFit const& fit,
                              TrianglePair const& pair,
                              int origin,
                              int dev);

//! lambda'_{i,n} E_i + delta'_{i,n} C_{i,n-i+1}
double point_estimate_ultimate(PoissonFit const& fit,
                               TrianglePair const& pair,
                               int origin);

//---------------------------------------------------------------------------//
}  // namespace xlcount

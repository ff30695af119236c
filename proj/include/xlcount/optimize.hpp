//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/optimize.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <vector>

namespace xlcount
{
//---------------------------------------------------------------------------//
struct ScalarOptimum
{
    double x = 0;
    double value = 0;
};

/*!
 * Maximize a univariate function on [lo, hi].
 *
 * A uniform grid of \c grid_points locates the best bracket, then Brent's
 * method refines inside it. Non-finite values are treated as -inf; if every
 * grid value is non-finite the result value is -inf.
 */
ScalarOptimum maximize_bounded(std::function<double(double)> const& f,
                               double lo,
                               double hi,
                               int grid_points = 24);

//---------------------------------------------------------------------------//
struct SimplexOptions
{
    double initial_step = 0.1;
    //! Stop when max - min of the simplex values falls below this
    double value_tolerance = 1e-10;
    int max_evaluations = 20000;
    //! Number of restarts from the current best vertex
    int restarts = 2;
};

struct SimplexOptimum
{
    std::vector<double> x;
    double value = 0;
    int evaluations = 0;
    bool converged = false;
};

//! Maximize with the Nelder-Mead simplex (deterministic, no randomization)
SimplexOptimum
maximize_simplex(std::function<double(std::vector<double> const&)> const& f,
                 std::vector<double> start,
                 SimplexOptions const& options = {});

//---------------------------------------------------------------------------//
}  // namespace xlcount

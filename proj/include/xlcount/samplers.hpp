//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/samplers.hpp
//! Variate generators on top of CounterRng.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>

#include "rng.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
//! Standard normal via Box-Muller (one variate per call)
double sample_normal(CounterRng& rng);

//! Gamma(shape, 1); shapes below 1 use the boosting identity
double sample_gamma(double shape, CounterRng& rng);

/*!
 * Poisson(mean).
 *
 * Inversion below mean 30, Hoermann's transformed rejection with squeeze
 * (PTRS) above.
 */
std::int64_t sample_poisson(double mean, CounterRng& rng);

//! Binomial(trials, prob): inversion for small n*min(p,1-p), BTRS otherwise
std::int64_t sample_binomial(std::int64_t trials, double prob, CounterRng& rng);

//! NegBin(r, p) as Poisson(Gamma(r, (1-p)/p)); r = 0 or p = 1 gives 0
std::int64_t sample_negbin(double shape, double prob, CounterRng& rng);

//---------------------------------------------------------------------------//
}  // namespace xlcount

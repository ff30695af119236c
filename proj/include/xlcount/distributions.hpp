//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/distributions.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rng.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
// LAW PARAMETERS
//---------------------------------------------------------------------------//
struct Poisson
{
    double mean = 0;
};

struct Binomial
{
    std::int64_t trials = 0;
    double prob = 0;
};

//! NB(r, p) with pmf Gamma(r+k) / (k! Gamma(r)) p^r (1-p)^k; r = 0 is the
//! point mass at zero
struct NegBin
{
    double r = 0;
    double p = 1;
};

//! Law of B + X with B ~ Binomial independent of X
template<class Other>
struct Convolution
{
    Binomial binomial;
    Other other;
};

using BinomialPoisson = Convolution<Poisson>;
using BinomialNegBin = Convolution<NegBin>;

//---------------------------------------------------------------------------//
/*!
 * Discrete count law: one of the five families used by the frequency model.
 *
 * Parameters are validated on construction (InvalidParameter); the object is
 * immutable afterwards.
 */
class CountDistribution
{
  public:
    using Law
        = std::variant<Poisson, Binomial, NegBin, BinomialPoisson, BinomialNegBin>;

    CountDistribution(Poisson law);
    CountDistribution(Binomial law);
    CountDistribution(NegBin law);
    CountDistribution(BinomialPoisson law);
    CountDistribution(BinomialNegBin law);

    Law const& law() const noexcept { return law_; }

    //! "poisson", "binomial", "negbin", "binomial+poisson", "binomial+negbin"
    std::string kind() const;

    template<class T>
    bool holds() const noexcept
    {
        return std::holds_alternative<T>(law_);
    }

    template<class T>
    T const& get() const
    {
        return std::get<T>(law_);
    }

  private:
    Law law_;
};

struct Moments
{
    double mean = 0;
    double variance = 0;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//

double pmf(CountDistribution const& dist, std::int64_t k);
double cdf(CountDistribution const& dist, std::int64_t k);
Moments moments(CountDistribution const& dist);

/*!
 * Smallest k with cdf(k) >= q.
 *
 * q = 0 gives the smallest support point; q = 1 gives the truncation point
 * where the accumulated mass first reaches 1 - 1e-12.
 */
std::int64_t quantile(CountDistribution const& dist, double q);

//! pmf(0..K) where K is the first point with cdf >= 1 - tail
std::vector<double>
pmf_table(CountDistribution const& dist, double tail = 1e-12);

std::int64_t sample(CountDistribution const& dist, CounterRng& rng);

//---------------------------------------------------------------------------//
// LOG-PMF KERNELS (used by the likelihoods)
//---------------------------------------------------------------------------//

//! log P(X = k), X ~ Poisson(mean); 0 * log 0 = 0 so Poisson(0) at 0 is 0
//! log Gamma(r + k) - log Gamma(r) for r > 0
double log_rising_factorial(double r, std::int64_t k);
//! log k!, tabulated for small k
double log_factorial(std::int64_t k);

double poisson_log_pmf(std::int64_t k, double mean);

double binomial_log_pmf(std::int64_t k, std::int64_t trials, double prob);

//! log of the NB pmf; log Gamma(r+k) - log Gamma(r) is evaluated as a running
//! product for moderate k so shapes near 1e7 keep full precision
double negbin_log_pmf(std::int64_t k, double r, double p);

//---------------------------------------------------------------------------//
}  // namespace xlcount

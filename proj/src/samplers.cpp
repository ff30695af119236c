//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file samplers.cpp
//---------------------------------------------------------------------------//
#include "xlcount/samplers.hpp"

#include <cmath>
#include <numbers>

#include "xlcount/error.hpp"

namespace xlcount
{
namespace
{
//---------------------------------------------------------------------------//
std::int64_t poisson_inversion(double mean, CounterRng& rng)
{
    double const head = std::exp(-mean);
    // Beyond this the remaining mass is below double resolution
    auto const cap = static_cast<std::int64_t>(mean + 40 * std::sqrt(mean) + 40);
    while (true)
    {
        double u = uniform_open(rng);
        double prob = head;
        double cdf = head;
        std::int64_t k = 0;
        while (u > cdf && k < cap)
        {
            ++k;
            prob *= mean / static_cast<double>(k);
            cdf += prob;
        }
        if (k < cap)
            return k;
    }
}

std::int64_t poisson_ptrs(double mean, CounterRng& rng)
{
    double const slam = std::sqrt(mean);
    double const loglam = std::log(mean);
    double const b = 0.931 + 2.53 * slam;
    double const a = -0.059 + 0.02483 * b;
    double const inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double const vr = 0.9277 - 3.6224 / (b - 2);

    while (true)
    {
        double u = uniform_open(rng) - 0.5;
        double v = uniform_open(rng);
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::int64_t>(k);
        if (k < 0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - std::lgamma(k + 1))
        {
            return static_cast<std::int64_t>(k);
        }
    }
}

std::int64_t binomial_inversion(std::int64_t n, double p, CounterRng& rng)
{
    double const q = 1 - p;
    double const s = p / q;
    double const a = static_cast<double>(n + 1) * s;
    double const r0 = std::pow(q, static_cast<double>(n));
    while (true)
    {
        double r = r0;
        double u = uniform_open(rng);
        std::int64_t k = 0;
        while (u > r)
        {
            u -= r;
            ++k;
            if (k > n)
                break;
            r *= a / static_cast<double>(k) - s;
        }
        if (k <= n)
            return k;
    }
}

std::int64_t binomial_btrs(std::int64_t n, double p, CounterRng& rng)
{
    double const nd = static_cast<double>(n);
    double const spq = std::sqrt(nd * p * (1 - p));
    double const b = 1.15 + 2.53 * spq;
    double const a = -0.0873 + 0.0248 * b + 0.01 * p;
    double const c = nd * p + 0.5;
    double const vr = 0.92 - 4.2 / b;
    double const alpha = (2.83 + 5.1 / b) * spq;
    double const lpq = std::log(p / (1 - p));
    double const m = std::floor((nd + 1) * p);
    double const h = std::lgamma(m + 1) + std::lgamma(nd - m + 1);

    while (true)
    {
        double u = uniform_open(rng) - 0.5;
        double v = uniform_open(rng);
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2 * a / us + b) * u + c);
        if (k < 0 || k > nd)
            continue;
        if (us >= 0.07 && v <= vr)
            return static_cast<std::int64_t>(k);
        v = std::log(v * alpha / (a / (us * us) + b));
        if (v <= h - std::lgamma(k + 1) - std::lgamma(nd - k + 1)
                     + (k - m) * lpq)
        {
            return static_cast<std::int64_t>(k);
        }
    }
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
double sample_normal(CounterRng& rng)
{
    double u1 = uniform_open(rng);
    double u2 = uniform_open(rng);
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

double sample_gamma(double shape, CounterRng& rng)
{
    if (!(shape > 0) || !std::isfinite(shape))
    {
        throw Error(ErrorCode::InvalidParameter,
                    "gamma shape must be positive and finite");
    }
    if (shape < 1)
    {
        // G(a) = G(a+1) * U^(1/a)
        double g = sample_gamma(shape + 1, rng);
        return g * std::exp(std::log(uniform_open(rng)) / shape);
    }

    // Marsaglia and Tsang (2000)
    double const d = shape - 1.0 / 3.0;
    double const c = 1.0 / std::sqrt(9 * d);
    while (true)
    {
        double x, v;
        do
        {
            x = sample_normal(rng);
            v = 1 + c * x;
        } while (v <= 0);
        v = v * v * v;
        double u = uniform_open(rng);
        double x2 = x * x;
        if (u < 1 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1 - v + std::log(v)))
            return d * v;
    }
}

std::int64_t sample_poisson(double mean, CounterRng& rng)
{
    if (!(mean >= 0) || !std::isfinite(mean))
        throw Error(ErrorCode::InvalidParameter, "Poisson mean must be >= 0");
    if (mean == 0)
        return 0;
    if (mean < 30)
        return poisson_inversion(mean, rng);
    return poisson_ptrs(mean, rng);
}

std::int64_t sample_binomial(std::int64_t trials, double prob, CounterRng& rng)
{
    if (trials < 0 || !(prob >= 0 && prob <= 1))
    {
        throw Error(ErrorCode::InvalidParameter,
                    "binomial requires trials >= 0 and prob in [0,1]");
    }
    if (trials == 0 || prob == 0)
        return 0;
    if (prob == 1)
        return trials;
    if (prob > 0.5)
        return trials - sample_binomial(trials, 1 - prob, rng);
    if (static_cast<double>(trials) * prob < 30)
        return binomial_inversion(trials, prob, rng);
    return binomial_btrs(trials, prob, rng);
}

std::int64_t sample_negbin(double shape, double prob, CounterRng& rng)
{
    if (!(shape >= 0) || !(prob > 0 && prob <= 1))
    {
        throw Error(ErrorCode::InvalidParameter,
                    "negative binomial requires r >= 0 and p in (0,1]");
    }
    if (shape == 0 || prob == 1)
        return 0;
    double intensity = sample_gamma(shape, rng) * (1 - prob) / prob;
    return sample_poisson(intensity, rng);
}

//---------------------------------------------------------------------------//
}  // namespace xlcount

//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file estimators.cpp
//---------------------------------------------------------------------------//
#include "xlcount/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xlcount/distributions.hpp"
#include "xlcount/error.hpp"
#include "xlcount/optimize.hpp"

namespace xlcount
{
namespace
{
double logit(double p)
{
    return std::log(p / (1 - p));
}

double logistic(double u)
{
    return 1 / (1 + std::exp(-u));
}

//! p1 mapped from an unconstrained coordinate into [lower, upper]
double bounded_p1(double u, P1Options const& options)
{
    return options.lower + (options.upper - options.lower) * logistic(u);
}

double unbounded_p1(double p1, P1Options const& options)
{
    double t = (p1 - options.lower) / (options.upper - options.lower);
    t = std::clamp(t, 1e-12, 1 - 1e-12);
    return logit(t);
}
}  // namespace

//---------------------------------------------------------------------------//
// POISSON
//---------------------------------------------------------------------------//
std::vector<double>
estimate_lambda(ClaimTriangle const& new_claims, ExposureVector const& exposure)
{
    int const n = new_claims.size();
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
    {
        std::int64_t claims = 0;
        double volume = 0;
        for (int i = 1; i <= n - j + 1; ++i)
        {
            claims += new_claims(i, j);
            volume += exposure[i];
        }
        lambda[static_cast<std::size_t>(j - 1)]
            = static_cast<double>(claims) / volume;
    }
    return lambda;
}

std::vector<double> estimate_lambda(TrianglePair const& pair)
{
    return estimate_lambda(pair.new_claims(), pair.exposure());
}

std::vector<double> estimate_delta(TrianglePair const& pair)
{
    int const n = pair.size();
    std::vector<double> delta(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int j = 1; j <= n - 1; ++j)
    {
        std::int64_t drops = 0;
        std::int64_t stock = 0;
        for (int i = 1; i <= n - j; ++i)
        {
            drops += pair.drops()(i, j + 1);
            stock += pair.cumulative(i, j);
        }
        delta[static_cast<std::size_t>(j - 1)]
            = stock > 0 ? static_cast<double>(drops) / static_cast<double>(stock)
                        : 0.0;
    }
    return delta;
}

PoissonFit fit_poisson(TrianglePair const& pair)
{
    return {estimate_lambda(pair), estimate_delta(pair)};
}

double lambda_prime(std::span<double const> lambda,
                    std::span<double const> delta,
                    int j)
{
    if (j < 1 || j > static_cast<int>(lambda.size()))
        throw Error(ErrorCode::InvalidParameter, "development index out of range");
    double value = 0;
    for (int k = 1; k <= j; ++k)
    {
        // Induction step: lambda'_k = lambda_k + lambda'_{k-1} (1 - delta_{k-1})
        double carried = k > 1 ? value * (1 - delta[static_cast<std::size_t>(k - 2)])
                               : 0.0;
        value = lambda[static_cast<std::size_t>(k - 1)] + carried;
    }
    return value;
}

double lambda_prime(PoissonFit const& fit, int j)
{
    return lambda_prime(fit.lambda_hat, fit.delta_hat, j);
}

void check_lower_cell(int n, int origin, int dev)
{
    if (origin < 1 || origin > n || dev < 1 || dev > n || origin + dev < n + 1)
    {
        throw Error(ErrorCode::IndexOutsideLowerTriangle,
                    "cell (" + std::to_string(origin) + "," + std::to_string(dev)
                        + ") is not in the lower triangle of n="
                        + std::to_string(n));
    }
}

ConditionalFactors conditional_factors(std::span<double const> lambda,
                                       std::span<double const> delta,
                                       int origin,
                                       int dev)
{
    int const n = static_cast<int>(lambda.size());
    check_lower_cell(n, origin, dev);
    auto d = [&delta](int k) { return delta[static_cast<std::size_t>(k - 1)]; };

    ConditionalFactors result;
    for (int k = n - origin + 1; k <= dev - 1; ++k)
        result.delta_prime *= 1 - d(k);
    for (int k = n - origin + 2; k <= dev; ++k)
    {
        double survive = 1;
        for (int l = k; l <= dev - 1; ++l)
            survive *= 1 - d(l);
        result.lambda_prime += lambda[static_cast<std::size_t>(k - 1)] * survive;
    }
    return result;
}

ConditionalFactors conditional_factors(PoissonFit const& fit, int origin, int dev)
{
    return conditional_factors(fit.lambda_hat, fit.delta_hat, origin, dev);
}

//---------------------------------------------------------------------------//
// NEGATIVE BINOMIAL
//---------------------------------------------------------------------------//
std::vector<double> p_sequence(double p1, std::span<double const> delta)
{
    if (!(p1 > 0 && p1 <= 1))
        throw Error(ErrorCode::InvalidParameter, "p1 must be in (0,1]");
    std::vector<double> p(delta.size() + 1);
    double dropped = 0;  // sum_{k<j} delta_k prod_{l<k} (1 - delta_l)
    double survive = 1;
    p[0] = p1;
    for (std::size_t j = 1; j < p.size(); ++j)
    {
        double d = delta[j - 1];
        if (!(d >= 0 && d <= 1))
            throw Error(ErrorCode::InvalidParameter, "delta must be in [0,1]");
        dropped += d * survive;
        survive *= 1 - d;
        p[j] = p1 / (1 - (1 - p1) * dropped);
    }
    return p;
}

std::vector<double>
estimate_r(std::span<double const> lambda, std::span<double const> p)
{
    if (lambda.size() != p.size())
        throw Error(ErrorCode::DimensionMismatch, "lambda and p sizes differ");
    std::vector<double> r(lambda.size());
    for (std::size_t j = 0; j < r.size(); ++j)
    {
        if (p[j] >= 1)
        {
            throw Error(ErrorCode::DegenerateP,
                        "p_" + std::to_string(j + 1)
                            + " = 1: use the Poisson model");
        }
        r[j] = lambda[j] * p[j] / (1 - p[j]);
    }
    return r;
}

double negbin_profile_loglik(ClaimTriangle const& new_claims,
                             ExposureVector const& exposure,
                             std::span<double const> lambda,
                             std::span<double const> delta,
                             double p1)
{
    int const n = new_claims.size();
    auto p = p_sequence(p1, delta);
    double total = 0;
    for (int j = 1; j <= n; ++j)
    {
        double pj = p[static_cast<std::size_t>(j - 1)];
        double rj = lambda[static_cast<std::size_t>(j - 1)] * pj / (1 - pj);
        if (!(pj > 0 && pj < 1) || rj == 0)
        {
            for (int i = 1; i <= n - j + 1; ++i)
                total += negbin_log_pmf(new_claims(i, j), rj * exposure[i], pj);
            continue;
        }
        // Column-level logs hoisted out of the per-cell NB kernel
        double const log_p = std::log(pj);
        double const log_q = std::log1p(-pj);
        for (int i = 1; i <= n - j + 1; ++i)
        {
            auto k = new_claims(i, j);
            double shape = rj * exposure[i];
            total += log_rising_factorial(shape, k) - log_factorial(k)
                     + shape * log_p + static_cast<double>(k) * log_q;
        }
    }
    return total;
}

P1Estimate mle_p1(ClaimTriangle const& new_claims,
                  ExposureVector const& exposure,
                  std::span<double const> lambda,
                  std::span<double const> delta,
                  P1Options const& options)
{
    auto objective = [&](double u) {
        return negbin_profile_loglik(new_claims, exposure, lambda, delta,
                                     bounded_p1(u, options));
    };
    // Logistic map covers [lower, upper]; +/-30 reaches both ends to 1e-13
    auto best = maximize_bounded(objective, -30.0, 30.0);
    if (!std::isfinite(best.value))
    {
        throw Error(ErrorCode::OptimizerFailed,
                    "NB log-likelihood is not finite for any p1");
    }
    P1Estimate result;
    result.p1 = bounded_p1(best.x, options);
    result.loglik = best.value;
    result.degenerate = result.p1 > options.degeneracy_threshold;
    return result;
}

P1Estimate mle_p1(TrianglePair const& pair,
                  std::span<double const> delta_hat,
                  P1Options const& options)
{
    auto lambda = estimate_lambda(pair);
    return mle_p1(pair.new_claims(), pair.exposure(), lambda, delta_hat,
                  options);
}

NegBinFit fit_negbin(TrianglePair const& pair, P1Options const& options)
{
    NegBinFit fit;
    fit.lambda_hat = estimate_lambda(pair);
    fit.delta_hat = estimate_delta(pair);
    auto est = mle_p1(pair.new_claims(), pair.exposure(), fit.lambda_hat,
                      fit.delta_hat, options);
    fit.p1 = est.p1;
    fit.degenerate = est.degenerate;
    fit.loglik = est.loglik;
    fit.p = p_sequence(fit.p1, fit.delta_hat);
    fit.r_hat = estimate_r(fit.lambda_hat, fit.p);
    return fit;
}

//---------------------------------------------------------------------------//
// JOINT
//---------------------------------------------------------------------------//
double joint_loglik(TrianglePair const& pair,
                    double p1,
                    std::span<double const> delta)
{
    int const n = pair.size();
    auto lambda = estimate_lambda(pair);
    double total = negbin_profile_loglik(pair.new_claims(), pair.exposure(),
                                         lambda, delta, p1);
    for (int j = 1; j <= n - 1; ++j)
    {
        double dj = delta[static_cast<std::size_t>(j - 1)];
        for (int i = 1; i <= n - j; ++i)
        {
            total += binomial_log_pmf(pair.drops()(i, j + 1),
                                      pair.cumulative(i, j), dj);
        }
    }
    return total;
}

JointEstimate joint_mle(TrianglePair const& pair, P1Options const& options)
{
    auto const delta_hat = estimate_delta(pair);
    auto const start = mle_p1(pair, delta_hat, options);

    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < delta_hat.size(); ++j)
    {
        if (delta_hat[j] > 0 && delta_hat[j] < 1)
            free.push_back(j);
    }

    JointEstimate result;
    result.delta_tilde = delta_hat;
    if (free.empty())
    {
        // Binomial term is constant in p1: the joint problem is the 1-D one
        result.p1 = start.p1;
    }
    else
    {
        auto unpack = [&](std::vector<double> const& x, double& p1,
                          std::vector<double>& delta) {
            p1 = bounded_p1(x[0], options);
            delta = delta_hat;
            for (std::size_t k = 0; k < free.size(); ++k)
                delta[free[k]] = logistic(x[k + 1]);
        };
        auto objective = [&](std::vector<double> const& x) {
            double p1;
            std::vector<double> delta;
            unpack(x, p1, delta);
            return joint_loglik(pair, p1, delta);
        };

        std::vector<double> x0{unbounded_p1(start.p1, options)};
        for (auto j : free)
            x0.push_back(logit(delta_hat[j]));
        auto best = maximize_simplex(objective, x0);
        if (!std::isfinite(best.value))
        {
            throw Error(ErrorCode::OptimizerFailed,
                        "joint log-likelihood is not finite");
        }
        unpack(best.x, result.p1, result.delta_tilde);
    }
    result.p = p_sequence(result.p1, result.delta_tilde);
    result.loglik = joint_loglik(pair, result.p1, result.delta_tilde);
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
